#pragma once

#include <map>
#include <optional>

#include "fcover/lp.hpp"
#include "fcover/sampled.hpp"
#include "fcover/transforms.hpp"

namespace fcover {

/// Grid pair for the discretized programs: constraints mu*g >= f are
/// enforced at the constraint-grid nodes, measure atoms live on the atom
/// grid. The atom window must extend past the constraint window far enough
/// that no boundary constraint is structurally impossible to satisfy.
struct GridConfig {
    GridSpec constraint_grid;
    GridSpec atom_grid;
    bool allow_unpadded = false;  // override the structural-feasibility check
    double tail_eps = 1e-10;
};

/// Assembled finite covering program for (f, g, h):
///   minimize sum_j h(t_j) w_j   s.t.  sum_j g(x_i - t_j) w_j >= f(x_i)
/// with every kernel entry evaluated exactly from g (never resampled).
struct CoveringInstance {
    FunctionExpr f, g, h;
    GridSpec constraint_grid;
    GridSpec atom_grid;
    LpProblem matrix;
    double density = 0.0;  // fraction of kernel entries above tail_eps
};

class PaddingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

CoveringInstance build_instance(const FunctionExpr& f, const FunctionExpr& g,
                                const FunctionExpr& h, const GridConfig& cfg);

/// Volume bounds of the covering number, all computed by quadrature over
/// the atom window:
///   integral ratio   int f / int g                      (lower)
///   p-bounds         int (f star g-^{p-1}) / int g-^p   (upper, p > 1)
///   square bounds    int f^2 / ||f*g-||_inf             (lower)
///                    2^n int f^2 / ||f*g||_inf          (upper)
///   even variants    int f^2 / int fg, 2^n int f^2 / int fg
///   weighted forms when a weight h is supplied.
struct BoundsReport {
    double lower_ratio = 0.0;
    std::map<double, double> upper_p;
    double lower_sq = 0.0;
    double upper_sq = 0.0;
    std::optional<std::pair<double, double>> even_variant;       // lower, upper
    std::optional<std::pair<double, double>> weighted_variant;   // lower, upper (p = 2)
    double best_lower() const;
    double best_upper() const;
};

BoundsReport volume_bounds(const FunctionExpr& f, const FunctionExpr& g,
                           const std::vector<double>& p_list, const FunctionExpr* h,
                           const GridConfig& cfg);

struct CoveringResult {
    double value_primal = 0.0;  // covering optimum
    double value_dual = 0.0;    // separation optimum of the same finite program
    DiscreteMeasure mu;         // covering measure (atoms on atom grid)
    DiscreteMeasure rho;        // separation measure (atoms on constraint grid)
    double gap = 0.0;
    LpStatus status = LpStatus::NumericalError;
    std::int64_t iterations = 0;
    double lower_bound = 0.0;
    double upper_bound = std::numeric_limits<double>::infinity();
    std::int64_t infeasible_row = -1;
    double runtime_ms = 0.0;
};

/// Solves the assembled program; attaches volume bounds when f,g are
/// geometric log-concave.
CoveringResult covering_number(const CoveringInstance& inst, const ToleranceConfig& tol = {});

/// Convenience: build + solve.
CoveringResult covering_number(const FunctionExpr& f, const FunctionExpr& g, const FunctionExpr& h,
                               const GridConfig& cfg, const ToleranceConfig& tol = {});

/// The transposed program
///   maximize sum_i f(x_i) rho_i   s.t.  sum_i g(t_j - x_i) rho_i <= h(t_j),
/// with rho atoms on the constraint grid and constraints at atom-grid
/// nodes. Equals the dual of covering_number with g replaced by g-.
CoveringResult separation_number(const FunctionExpr& f, const FunctionExpr& g,
                                 const FunctionExpr& h, const GridConfig& cfg,
                                 const ToleranceConfig& tol = {});

/// Covering measure with density f^2((x+x0)/2)/||f*g||_inf against cell
/// volume, x0 = argmax of f*g (grid search, ties toward the origin).
struct ExplicitMeasure {
    DiscreteMeasure measure;
    Point x0;
    double sup_conv = 0.0;  // ||f*g||_inf over the constraint grid
    double payoff = 0.0;    // mass for the covering side, int f d rho for separation
};

ExplicitMeasure explicit_covering_measure(const FunctionExpr& f, const FunctionExpr& g,
                                          const GridConfig& cfg);

/// Separation measure with density f/||f*g||_inf on the constraint grid.
ExplicitMeasure explicit_separation_measure(const FunctionExpr& f, const FunctionExpr& g,
                                            const GridConfig& cfg);

/// min over grid nodes of (mu*g)(x) - f(x), g evaluated exactly.
double verify_cover(const DiscreteMeasure& mu, const FunctionExpr& g, const FunctionExpr& f,
                    const GridSpec& grid);

/// max over grid nodes of (rho*g)(x), g evaluated exactly.
double sup_convolved_measure(const DiscreteMeasure& rho, const FunctionExpr& g,
                             const GridSpec& grid);

}  // namespace fcover
