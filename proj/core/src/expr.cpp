#include "fcover/expr.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace fcover {

namespace {

constexpr double kValueFloor = 1e-300;  // indicator tails otherwise leave denormal noise

int unify_dims(int a, int b, const char* what) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    return a;
}

std::shared_ptr<const detail::ExprNode> make_node(ExprVariant v, int dim,
                                                  std::vector<FunctionExpr> children = {}) {
    auto n = std::make_shared<detail::ExprNode>();
    n->payload = std::move(v);
    n->dim = dim;
    n->children = std::move(children);
    return n;
}

std::string fmt(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

FunctionExpr FunctionExpr::gaussian(const SymMat& a) {
    if (!a.positive_definite())
        throw std::invalid_argument("gaussian matrix must be positive definite");
    return FunctionExpr(make_node(GaussianNode{a}, a.dim));
}

FunctionExpr FunctionExpr::indicator_box(const Point& lo, const Point& hi) {
    if (lo.dim != hi.dim) throw std::invalid_argument("box corners disagree on dimension");
    for (int k = 0; k < lo.dim; ++k)
        if (!(lo[k] < hi[k])) throw std::invalid_argument("box is empty on axis " + std::to_string(k));
    return FunctionExpr(make_node(IndicatorBoxNode{lo, hi}, lo.dim));
}

FunctionExpr FunctionExpr::indicator_ball(double p, double radius) {
    if (p != 1.0 && p != 2.0 && !std::isinf(p))
        throw std::invalid_argument("ball norm exponent must be 1, 2 or inf");
    if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
    return FunctionExpr(make_node(IndicatorBallNode{p, radius}, 0));
}

FunctionExpr FunctionExpr::expnorm(double p, double c) {
    if (p != 1.0 && p != 2.0 && !std::isinf(p))
        throw std::invalid_argument("expnorm exponent must be 1, 2 or inf");
    if (!(c > 0.0)) throw std::invalid_argument("expnorm scale must be positive");
    return FunctionExpr(make_node(ExpNormNode{p, c}, 0));
}

FunctionExpr FunctionExpr::one() { return FunctionExpr(make_node(OneNode{}, 0)); }

FunctionExpr FunctionExpr::translate(FunctionExpr child, const Point& offset) {
    int d = unify_dims(child.dim(), offset.dim, "translate");
    return FunctionExpr(make_node(TranslateNode{offset}, d, {std::move(child)}));
}

FunctionExpr FunctionExpr::reflect(FunctionExpr child) {
    int d = child.dim();
    return FunctionExpr(make_node(ReflectNode{}, d, {std::move(child)}));
}

FunctionExpr FunctionExpr::linear_map(FunctionExpr child, const Mat& a) {
    if (a.det() == 0.0) throw std::invalid_argument("linmap matrix must be invertible");
    int d = unify_dims(child.dim(), a.dim, "linmap");
    return FunctionExpr(make_node(LinearMapNode{a}, d, {std::move(child)}));
}

FunctionExpr FunctionExpr::scale_value(FunctionExpr child, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
    int d = child.dim();
    return FunctionExpr(make_node(ScaleValueNode{factor}, d, {std::move(child)}));
}

FunctionExpr FunctionExpr::hadwiger_scale(FunctionExpr child, double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("hscale lambda must lie in (0,1]");
    int d = child.dim();
    return FunctionExpr(make_node(HadwigerScaleNode{lambda}, d, {std::move(child)}));
}

FunctionExpr FunctionExpr::product(FunctionExpr a, FunctionExpr b) {
    return product(std::vector<FunctionExpr>{std::move(a), std::move(b)});
}

FunctionExpr FunctionExpr::product(std::vector<FunctionExpr> children) {
    if (children.empty()) throw std::invalid_argument("empty product");
    int d = 0;
    for (const auto& ch : children) d = unify_dims(d, ch.dim(), "prod");
    return FunctionExpr(make_node(ProductNode{}, d, std::move(children)));
}

FunctionExpr FunctionExpr::power(FunctionExpr child, double exponent) {
    if (!(exponent > 0.0)) throw std::invalid_argument("pow exponent must be positive");
    int d = child.dim();
    return FunctionExpr(make_node(PowerNode{exponent}, d, {std::move(child)}));
}

FunctionExpr FunctionExpr::tabulated(GridSpec grid, std::vector<double> values) {
    if (static_cast<std::int64_t>(values.size()) != grid.size())
        throw std::invalid_argument("tabulated values do not match grid size");
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("tabulated values must be nonnegative");
    auto data = std::make_shared<TabulatedNode::Data>();
    int d = grid.dim();
    data->grid = std::move(grid);
    data->values = std::move(values);
    return FunctionExpr(make_node(TabulatedNode{std::move(data)}, d));
}

namespace {

struct EvalVisitor {
    const detail::ExprNode& n;
    const Point& x;

    double operator()(const GaussianNode& g) const { return std::exp(-0.5 * g.a.quad(x)); }

    double operator()(const IndicatorBoxNode& b) const {
        for (int k = 0; k < b.lo.dim; ++k)
            if (x[k] < b.lo[k] || x[k] > b.hi[k]) return 0.0;
        return 1.0;
    }

    double operator()(const IndicatorBallNode& b) const {
        return x.norm_p(b.p) <= b.radius ? 1.0 : 0.0;
    }

    double operator()(const ExpNormNode& e) const { return std::exp(-e.c * x.norm_p(e.p)); }

    double operator()(const OneNode&) const { return 1.0; }

    double operator()(const TranslateNode& t) const {
        return n.children[0].eval(x - t.offset);
    }

    double operator()(const ReflectNode&) const { return n.children[0].eval(-x); }

    double operator()(const LinearMapNode& l) const {
        return n.children[0].eval(l.a.apply(x));
    }

    double operator()(const ScaleValueNode& s) const {
        return s.factor * n.children[0].eval(x);
    }

    double operator()(const HadwigerScaleNode& h) const {
        double v = n.children[0].eval((1.0 / h.lambda) * x);
        return v == 0.0 ? 0.0 : std::pow(v, h.lambda);
    }

    double operator()(const ProductNode&) const {
        double v = 1.0;
        for (const auto& ch : n.children) {
            v *= ch.eval(x);
            if (v == 0.0) return 0.0;
        }
        return v;
    }

    double operator()(const PowerNode& p) const {
        double v = n.children[0].eval(x);
        return v == 0.0 ? 0.0 : std::pow(v, p.exponent);
    }

    double operator()(const TabulatedNode& t) const {
        const GridSpec& g = t.data->grid;
        if (x.dim != g.dim()) throw EvalError("tabulated expression: dimension mismatch");
        std::int64_t idx[2] = {0, 0};
        for (int k = 0; k < g.dim(); ++k) {
            const double u = (x[k] - g.lo(k)) / g.step(k);
            const double r = std::floor(u + 0.5);
            if (std::fabs(u - r) > 1e-6)
                throw EvalError("tabulated expression queried off its lattice");
            if (r < 0.0 || r >= static_cast<double>(g.points(k)))
                throw EvalError("tabulated expression queried outside its window");
            idx[k] = static_cast<std::int64_t>(r);
        }
        return t.data->values[static_cast<size_t>(g.flat_index(idx[0], idx[1]))];
    }
};

}  // namespace

double FunctionExpr::eval(const Point& x) const {
    if (node_->dim != 0 && node_->dim != x.dim)
        throw EvalError("expression/point dimension mismatch");
    double v = std::visit(EvalVisitor{*node_, x}, node_->payload);
    if (v < kValueFloor) return 0.0;
    return v;
}

bool FunctionExpr::equals(const FunctionExpr& o) const {
    if (node_ == o.node_) return true;
    if (node_->dim != o.node_->dim) return false;
    if (node_->payload.index() != o.node_->payload.index()) return false;
    if (node_->children.size() != o.node_->children.size()) return false;
    for (size_t i = 0; i < node_->children.size(); ++i)
        if (!node_->children[i].equals(o.node_->children[i])) return false;

    struct Eq {
        const ExprVariant& b;
        bool operator()(const GaussianNode& a) const { return a.a == std::get<GaussianNode>(b).a; }
        bool operator()(const IndicatorBoxNode& a) const {
            const auto& y = std::get<IndicatorBoxNode>(b);
            return a.lo == y.lo && a.hi == y.hi;
        }
        bool operator()(const IndicatorBallNode& a) const {
            const auto& y = std::get<IndicatorBallNode>(b);
            return a.p == y.p && a.radius == y.radius;
        }
        bool operator()(const ExpNormNode& a) const {
            const auto& y = std::get<ExpNormNode>(b);
            return a.p == y.p && a.c == y.c;
        }
        bool operator()(const OneNode&) const { return true; }
        bool operator()(const TranslateNode& a) const {
            return a.offset == std::get<TranslateNode>(b).offset;
        }
        bool operator()(const ReflectNode&) const { return true; }
        bool operator()(const LinearMapNode& a) const { return a.a == std::get<LinearMapNode>(b).a; }
        bool operator()(const ScaleValueNode& a) const {
            return a.factor == std::get<ScaleValueNode>(b).factor;
        }
        bool operator()(const HadwigerScaleNode& a) const {
            return a.lambda == std::get<HadwigerScaleNode>(b).lambda;
        }
        bool operator()(const ProductNode&) const { return true; }
        bool operator()(const PowerNode& a) const {
            return a.exponent == std::get<PowerNode>(b).exponent;
        }
        bool operator()(const TabulatedNode& a) const {
            return a.data == std::get<TabulatedNode>(b).data;
        }
    };
    return std::visit(Eq{o.node_->payload}, node_->payload);
}

std::string FunctionExpr::to_string() const {
    struct Pr {
        const detail::ExprNode& n;
        std::string operator()(const GaussianNode& g) const {
            if (g.a.dim == 1) return "gauss(" + fmt(g.a.a11) + ")";
            return "gauss2(" + fmt(g.a.a11) + "," + fmt(g.a.a12) + "," + fmt(g.a.a22) + ")";
        }
        std::string operator()(const IndicatorBoxNode& b) const {
            if (b.lo.dim == 1) return "ind_box(" + fmt(b.lo[0]) + "," + fmt(b.hi[0]) + ")";
            return "ind_box2(" + fmt(b.lo[0]) + "," + fmt(b.hi[0]) + "," + fmt(b.lo[1]) + "," +
                   fmt(b.hi[1]) + ")";
        }
        std::string operator()(const IndicatorBallNode& b) const {
            return "ind_ball(" + (std::isinf(b.p) ? std::string("inf") : fmt(b.p)) + "," +
                   fmt(b.radius) + ")";
        }
        std::string operator()(const ExpNormNode& e) const {
            return "expnorm(" + (std::isinf(e.p) ? std::string("inf") : fmt(e.p)) + "," + fmt(e.c) +
                   ")";
        }
        std::string operator()(const OneNode&) const { return "one"; }
        std::string operator()(const TranslateNode& t) const {
            std::string s = "translate(" + n.children[0].to_string() + "," + fmt(t.offset[0]);
            if (t.offset.dim == 2) s += "," + fmt(t.offset[1]);
            return s + ")";
        }
        std::string operator()(const ReflectNode&) const {
            return "reflect(" + n.children[0].to_string() + ")";
        }
        std::string operator()(const LinearMapNode& l) const {
            if (l.a.dim == 1) return "linmap(" + n.children[0].to_string() + "," + fmt(l.a.m11) + ")";
            return "linmap(" + n.children[0].to_string() + "," + fmt(l.a.m11) + "," + fmt(l.a.m12) +
                   "," + fmt(l.a.m21) + "," + fmt(l.a.m22) + ")";
        }
        std::string operator()(const ScaleValueNode& s) const {
            return "scale(" + n.children[0].to_string() + "," + fmt(s.factor) + ")";
        }
        std::string operator()(const HadwigerScaleNode& h) const {
            return "hscale(" + n.children[0].to_string() + "," + fmt(h.lambda) + ")";
        }
        std::string operator()(const ProductNode&) const {
            std::string s = n.children[0].to_string();
            for (size_t i = 1; i < n.children.size(); ++i)
                s = "prod(" + s + "," + n.children[i].to_string() + ")";
            return s;
        }
        std::string operator()(const PowerNode& p) const {
            return "pow(" + n.children[0].to_string() + "," + fmt(p.exponent) + ")";
        }
        std::string operator()(const TabulatedNode& t) const {
            return "tabulated(" + std::to_string(t.data->grid.dim()) + "d," +
                   std::to_string(t.data->grid.size()) + ")";
        }
    };
    return std::visit(Pr{*node_}, node_->payload);
}

bool FunctionExpr::is_even() const {
    struct Ev {
        const detail::ExprNode& n;
        bool operator()(const GaussianNode&) const { return true; }
        bool operator()(const IndicatorBoxNode& b) const {
            for (int k = 0; k < b.lo.dim; ++k)
                if (b.lo[k] != -b.hi[k]) return false;
            return true;
        }
        bool operator()(const IndicatorBallNode&) const { return true; }
        bool operator()(const ExpNormNode&) const { return true; }
        bool operator()(const OneNode&) const { return true; }
        bool operator()(const TranslateNode& t) const {
            return t.offset[0] == 0.0 && t.offset[1] == 0.0 && n.children[0].is_even();
        }
        bool operator()(const ReflectNode&) const { return n.children[0].is_even(); }
        bool operator()(const LinearMapNode&) const { return n.children[0].is_even(); }
        bool operator()(const ScaleValueNode&) const { return n.children[0].is_even(); }
        bool operator()(const HadwigerScaleNode&) const { return n.children[0].is_even(); }
        bool operator()(const ProductNode&) const {
            for (const auto& ch : n.children)
                if (!ch.is_even()) return false;
            return true;
        }
        bool operator()(const PowerNode&) const { return n.children[0].is_even(); }
        bool operator()(const TabulatedNode&) const { return false; }
    };
    return std::visit(Ev{*node_}, node_->payload);
}

bool FunctionExpr::is_geometric_log_concave() const {
    struct Glc {
        const detail::ExprNode& n;
        bool operator()(const GaussianNode&) const { return true; }
        bool operator()(const IndicatorBoxNode& b) const {
            for (int k = 0; k < b.lo.dim; ++k)
                if (b.lo[k] > 0.0 || b.hi[k] < 0.0) return false;
            return true;
        }
        bool operator()(const IndicatorBallNode&) const { return true; }
        bool operator()(const ExpNormNode&) const { return true; }
        bool operator()(const OneNode&) const { return false; }  // infinite integral
        bool operator()(const TranslateNode& t) const {
            return t.offset[0] == 0.0 && t.offset[1] == 0.0 &&
                   n.children[0].is_geometric_log_concave();
        }
        bool operator()(const ReflectNode&) const { return n.children[0].is_geometric_log_concave(); }
        bool operator()(const LinearMapNode&) const {
            return n.children[0].is_geometric_log_concave();
        }
        bool operator()(const ScaleValueNode& s) const {
            return s.factor == 1.0 && n.children[0].is_geometric_log_concave();
        }
        bool operator()(const HadwigerScaleNode&) const {
            return n.children[0].is_geometric_log_concave();
        }
        bool operator()(const ProductNode&) const {
            for (const auto& ch : n.children)
                if (!ch.is_geometric_log_concave()) return false;
            return true;
        }
        bool operator()(const PowerNode&) const { return n.children[0].is_geometric_log_concave(); }
        bool operator()(const TabulatedNode&) const { return false; }
    };
    return std::visit(Glc{*node_}, node_->payload);
}

std::optional<double> FunctionExpr::tail_radius(double eps) const {
    if (!(eps > 0.0) || eps >= 1.0) throw std::invalid_argument("tail eps must lie in (0,1)");
    struct Tail {
        const detail::ExprNode& n;
        double eps;
        std::optional<double> operator()(const GaussianNode& g) const {
            return std::sqrt(2.0 * std::log(1.0 / eps) / g.a.min_eigenvalue());
        }
        std::optional<double> operator()(const IndicatorBoxNode& b) const {
            double r = 0.0;
            for (int k = 0; k < b.lo.dim; ++k)
                r = std::max({r, std::fabs(b.lo[k]), std::fabs(b.hi[k])});
            return r;
        }
        std::optional<double> operator()(const IndicatorBallNode& b) const { return b.radius; }
        std::optional<double> operator()(const ExpNormNode& e) const {
            // beyond ||x||_inf = r every p-norm is >= r
            return std::log(1.0 / eps) / e.c;
        }
        std::optional<double> operator()(const OneNode&) const { return std::nullopt; }
        std::optional<double> operator()(const TranslateNode& t) const {
            auto r = n.children[0].tail_radius(eps);
            if (!r) return std::nullopt;
            return *r + t.offset.norm_inf();
        }
        std::optional<double> operator()(const ReflectNode&) const {
            return n.children[0].tail_radius(eps);
        }
        std::optional<double> operator()(const LinearMapNode& l) const {
            auto r = n.children[0].tail_radius(eps);
            if (!r) return std::nullopt;
            // |Ax| >= r_child once |x| >= r_child * ||A^{-1}||; use a crude
            // entrywise bound on the inverse.
            Mat inv = l.a.inverse();
            double norm = std::max(std::fabs(inv.m11) + std::fabs(inv.m12),
                                   std::fabs(inv.m21) + std::fabs(inv.m22));
            if (inv.dim == 1) norm = std::fabs(inv.m11);
            return *r * norm;
        }
        std::optional<double> operator()(const ScaleValueNode& s) const {
            double e2 = eps / s.factor;
            if (e2 >= 1.0) return 0.0;
            return n.children[0].tail_radius(e2);
        }
        std::optional<double> operator()(const HadwigerScaleNode& h) const {
            auto r = n.children[0].tail_radius(std::pow(eps, 1.0 / h.lambda));
            if (!r) return std::nullopt;
            return h.lambda * *r;
        }
        std::optional<double> operator()(const ProductNode&) const {
            // children of a product are all <= 1 only in the geometric class;
            // in general use the smallest child radius only when every child
            // is bounded by 1 (true for the grammar zoo except scale > 1).
            std::optional<double> best;
            for (const auto& ch : n.children) {
                auto r = ch.tail_radius(eps);
                if (r && (!best || *r < *best)) best = r;
            }
            return best;
        }
        std::optional<double> operator()(const PowerNode& p) const {
            return n.children[0].tail_radius(std::pow(eps, 1.0 / p.exponent));
        }
        std::optional<double> operator()(const TabulatedNode& t) const {
            double r = 0.0;
            for (int k = 0; k < t.data->grid.dim(); ++k)
                r = std::max({r, std::fabs(t.data->grid.lo(k)), std::fabs(t.data->grid.hi(k))});
            return r;
        }
    };
    return std::visit(Tail{*node_, eps}, node_->payload);
}

}  // namespace fcover
