#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fcover/geometry.hpp"
#include "fcover/grid.hpp"

namespace fcover {

class FunctionExpr;

// Leaf nodes. A dimension of 0 means "any dimension": the norm-based leaves
// (balls, expnorm) and the constant weight evaluate the same formula in 1D
// and 2D, so they adapt to whatever grid they meet.

struct GaussianNode {
    SymMat a;  // exp(-<Ax,x>/2), A symmetric positive definite
};

struct IndicatorBoxNode {
    Point lo, hi;  // closed box; nodes on the boundary count as inside
};

struct IndicatorBallNode {
    double p;       // 1, 2 or infinity
    double radius;  // > 0
};

struct ExpNormNode {
    double p;  // 1, 2 or infinity
    double c;  // > 0, exp(-c*||x||_p)
};

struct OneNode {};

// Wrappers.

struct TranslateNode {
    Point offset;  // u(x - a)
};

struct ReflectNode {};  // u(-x)

struct LinearMapNode {
    Mat a;  // u(Ax), A invertible
};

struct ScaleValueNode {
    double factor;  // a * u, a > 0
};

struct HadwigerScaleNode {
    double lambda;  // u(x/lambda)^lambda, lambda in (0,1]
};

struct ProductNode {};  // pointwise product of the children

struct PowerNode {
    double exponent;  // u^a, a > 0
};

/// Grid tabulation with exact node lookup. Off-lattice queries are an error:
/// tabulated functions keep the exact-evaluation discipline of the analytic
/// zoo instead of silently interpolating.
struct TabulatedNode {
    struct Data {
        GridSpec grid;
        std::vector<double> values;
    };
    std::shared_ptr<const Data> data;
};

using ExprVariant =
    std::variant<GaussianNode, IndicatorBoxNode, IndicatorBallNode, ExpNormNode, OneNode,
                 TranslateNode, ReflectNode, LinearMapNode, ScaleValueNode, HadwigerScaleNode,
                 ProductNode, PowerNode, TabulatedNode>;

namespace detail {
struct ExprNode {
    ExprVariant payload;
    int dim = 0;  // 0 = any
    std::vector<FunctionExpr> children;
};
}  // namespace detail

/// Immutable handle to an exactly evaluable function R^n -> [0, inf).
/// Construction validates parameter domains; evaluation at a point is exact
/// (closed form, no interpolation) and clamps values below 1e-300 to zero.
class FunctionExpr {
public:
    FunctionExpr() : FunctionExpr(one()) {}

    static FunctionExpr gaussian(const SymMat& a);
    static FunctionExpr indicator_box(const Point& lo, const Point& hi);
    static FunctionExpr indicator_ball(double p, double radius);
    static FunctionExpr expnorm(double p, double c);
    static FunctionExpr one();
    static FunctionExpr translate(FunctionExpr child, const Point& offset);
    static FunctionExpr reflect(FunctionExpr child);
    static FunctionExpr linear_map(FunctionExpr child, const Mat& a);
    static FunctionExpr scale_value(FunctionExpr child, double factor);
    static FunctionExpr hadwiger_scale(FunctionExpr child, double lambda);
    static FunctionExpr product(FunctionExpr a, FunctionExpr b);
    static FunctionExpr product(std::vector<FunctionExpr> children);
    static FunctionExpr power(FunctionExpr child, double exponent);
    static FunctionExpr tabulated(GridSpec grid, std::vector<double> values);

    /// Dimension the expression is pinned to; 0 if it works in any dimension.
    int dim() const { return node_->dim; }

    /// Exact value at x. Throws on dimension mismatch and on off-lattice
    /// queries of tabulated expressions.
    double operator()(const Point& x) const { return eval(x); }
    double eval(const Point& x) const;

    const ExprVariant& payload() const { return node_->payload; }
    const std::vector<FunctionExpr>& children() const { return node_->children; }

    /// Structural equality (same tree, bitwise-equal parameters).
    bool equals(const FunctionExpr& o) const;

    /// Canonical grammar text; parse_expr(to_string(e)) reproduces e for
    /// every grammar-expressible expression.
    std::string to_string() const;

    /// True if the expression is structurally even (f(-x) = f(x)).
    bool is_even() const;

    /// Conservative structural check for membership in the geometric
    /// log-concave class: upper semi-continuous, -log f convex,
    /// max f = f(0) = 1, finite positive integral.
    bool is_geometric_log_concave() const;

    /// Radius r such that f <= eps outside the ball of radius r (sup norm of
    /// the coordinates), when the decay is known; nullopt for expressions
    /// with no known decay (e.g. the constant weight).
    std::optional<double> tail_radius(double eps) const;

private:
    explicit FunctionExpr(std::shared_ptr<const detail::ExprNode> n) : node_(std::move(n)) {}

    std::shared_ptr<const detail::ExprNode> node_;
};

/// Thrown when an expression is asked for a value it cannot produce exactly
/// (off-lattice tabulated query, dimension mismatch).
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fcover
