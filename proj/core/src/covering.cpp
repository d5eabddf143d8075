#include "fcover/covering.hpp"

#include <chrono>
#include <cmath>

namespace fcover {

namespace {

int effective_dim(const FunctionExpr& f, const FunctionExpr& g, const FunctionExpr& h,
                  const GridConfig& cfg) {
    const int d = cfg.constraint_grid.dim();
    if (cfg.atom_grid.dim() != d) throw EvalError("constraint/atom grids disagree on dimension");
    for (const FunctionExpr* e : {&f, &g, &h})
        if (e->dim() != 0 && e->dim() != d) throw EvalError("expression/grid dimension mismatch");
    return d;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

CoveringInstance build_instance(const FunctionExpr& f, const FunctionExpr& g,
                                const FunctionExpr& h, const GridConfig& cfg) {
    effective_dim(f, g, h, cfg);
    const GridSpec& xg = cfg.constraint_grid;
    const GridSpec& tg = cfg.atom_grid;
    const std::int64_t k = xg.size(), m = tg.size();

    CoveringInstance inst{f, g, h, xg, tg, {}, 0.0};
    inst.matrix.rows = k;
    inst.matrix.cols = m;
    inst.matrix.a.resize(static_cast<size_t>(k * m));
    inst.matrix.b.resize(static_cast<size_t>(k));
    inst.matrix.c.resize(static_cast<size_t>(m));

    for (std::int64_t j = 0; j < m; ++j) inst.matrix.c[static_cast<size_t>(j)] = h(tg.node(j));

    std::int64_t nonneg = 0;
    for (std::int64_t i = 0; i < k; ++i) {
        const Point x = xg.node(i);
        inst.matrix.b[static_cast<size_t>(i)] = f(x);
        double* row = inst.matrix.a.data() + i * m;
        double row_max = 0.0;
        for (std::int64_t j = 0; j < m; ++j) {
            const double v = g(x - tg.node(j));
            row[j] = v;
            if (v > cfg.tail_eps) ++nonneg;
            if (v > row_max) row_max = v;
        }
        if (!cfg.allow_unpadded && inst.matrix.b[static_cast<size_t>(i)] > 0.0 && row_max == 0.0) {
            throw PaddingError(
                "constraint node has f > 0 but the kernel vanishes at every atom; widen the atom "
                "window (node " +
                std::to_string(i) + ")");
        }
    }
    inst.density = k * m > 0 ? static_cast<double>(nonneg) / static_cast<double>(k * m) : 0.0;
    inst.matrix.validate();
    return inst;
}

double BoundsReport::best_lower() const {
    double lo = lower_ratio;
    if (std::isfinite(lower_sq)) lo = std::max(lo, lower_sq);
    if (even_variant) lo = std::max(lo, even_variant->first);
    return lo;
}

double BoundsReport::best_upper() const {
    double up = std::numeric_limits<double>::infinity();
    for (const auto& [p, v] : upper_p)
        if (std::isfinite(v)) up = std::min(up, v);
    if (std::isfinite(upper_sq)) up = std::min(up, upper_sq);
    if (even_variant) up = std::min(up, even_variant->second);
    return up;
}

BoundsReport volume_bounds(const FunctionExpr& f, const FunctionExpr& g,
                           const std::vector<double>& p_list, const FunctionExpr* h,
                           const GridConfig& cfg) {
    for (double p : p_list)
        if (!(p > 1.0)) throw std::invalid_argument("volume bounds need p > 1");

    const GridSpec& quad = cfg.atom_grid;  // the wider window
    const int n = quad.dim();
    const double two_n = std::ldexp(1.0, n);

    SampledFunction fs = evaluate(f, quad);
    SampledFunction gs = evaluate(g, quad);
    const double int_f = integrate(fs);
    const double int_g = integrate(gs);

    BoundsReport rep;
    rep.lower_ratio = int_g > 0.0 ? int_f / int_g : std::numeric_limits<double>::infinity();

    SampledFunction f2 = evaluate(FunctionExpr::power(f, 2.0), quad);
    const double int_f2 = integrate(f2);

    FunctionExpr g_minus = FunctionExpr::reflect(g);
    const double sup_fg_minus = sup_norm(convolve(fs, g_minus));
    const double sup_fg = sup_norm(convolve(fs, g));
    rep.lower_sq =
        sup_fg_minus > 0.0 ? int_f2 / sup_fg_minus : std::numeric_limits<double>::infinity();
    rep.upper_sq = sup_fg > 0.0 ? two_n * int_f2 / sup_fg : std::numeric_limits<double>::infinity();

    for (double p : p_list) {
        FunctionExpr gm_pow =
            p == 2.0 ? g_minus : FunctionExpr::power(g_minus, p - 1.0);
        const double num = integrate(sup_convolve(fs, gm_pow));
        const double den = integrate(evaluate(FunctionExpr::power(g_minus, p), quad));
        rep.upper_p[p] = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
    }

    if (f.is_even() && g.is_even()) {
        const double int_fg = integrate(evaluate(FunctionExpr::product(f, g), quad));
        if (int_fg > 0.0) rep.even_variant = {int_f2 / int_fg, two_n * int_f2 / int_fg};
    }

    if (h != nullptr) {
        SampledFunction hs = evaluate(*h, quad);
        double int_fh = 0.0, int_gh = 0.0;
        for (std::int64_t i = 0; i < quad.size(); ++i) {
            const double w = quad.quad_weight(i);
            int_fh += fs.at(i) * hs.at(i) * w;
            int_gh += gs.at(i) * hs.at(i) * w;
        }
        const double p = 2.0;
        SampledFunction fstar = sup_convolve(fs, g_minus);
        double num = 0.0;
        for (std::int64_t i = 0; i < quad.size(); ++i)
            num += fstar.at(i) * hs.at(i) * quad.quad_weight(i);
        const double den = integrate(evaluate(FunctionExpr::power(g_minus, p), quad));
        const double upper =
            den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
        const double lower =
            int_gh > 0.0 ? int_fh / int_gh : std::numeric_limits<double>::infinity();
        rep.weighted_variant = {lower, upper};
    }
    return rep;
}

CoveringResult covering_number(const CoveringInstance& inst, const ToleranceConfig& tol) {
    const auto t0 = std::chrono::steady_clock::now();
    LpSolution sol = solve(inst.matrix, tol);

    CoveringResult res;
    res.status = sol.status;
    res.iterations = sol.iterations;
    res.infeasible_row = sol.infeasible_row;
    if (sol.status == LpStatus::Optimal) {
        res.value_primal = sol.primal_value;
        res.value_dual = sol.dual_value;
        res.gap = sol.gap;
        res.mu = DiscreteMeasure{inst.atom_grid, sol.w};
        res.rho = DiscreteMeasure{inst.constraint_grid, sol.rho};
    }
    if (inst.f.is_geometric_log_concave() && inst.g.is_geometric_log_concave()) {
        GridConfig cfg{inst.constraint_grid, inst.atom_grid, true, 1e-10};
        BoundsReport bounds = volume_bounds(inst.f, inst.g, {2.0}, nullptr, cfg);
        res.lower_bound = bounds.best_lower();
        res.upper_bound = bounds.best_upper();
    }
    res.runtime_ms = elapsed_ms(t0);
    return res;
}

CoveringResult covering_number(const FunctionExpr& f, const FunctionExpr& g, const FunctionExpr& h,
                               const GridConfig& cfg, const ToleranceConfig& tol) {
    return covering_number(build_instance(f, g, h, cfg), tol);
}

CoveringResult separation_number(const FunctionExpr& f, const FunctionExpr& g,
                                 const FunctionExpr& h, const GridConfig& cfg,
                                 const ToleranceConfig& tol) {
    // The separation program max f.rho s.t. rho * g <= h is the linear
    // programming dual of covering f by reflect(g); assemble that covering
    // program and read the pair from the other side.
    const auto t0 = std::chrono::steady_clock::now();
    CoveringInstance inst = build_instance(f, FunctionExpr::reflect(g), h, cfg);
    CoveringResult res = covering_number(inst, tol);
    // report the separation program's own status: an infeasible transposed
    // covering program means the payoff here is unbounded, and vice versa
    if (res.status == LpStatus::Infeasible) res.status = LpStatus::Unbounded;
    else if (res.status == LpStatus::Unbounded) res.status = LpStatus::Infeasible;
    res.runtime_ms = elapsed_ms(t0);
    return res;
}

ExplicitMeasure explicit_covering_measure(const FunctionExpr& f, const FunctionExpr& g,
                                          const GridConfig& cfg) {
    const GridSpec& xg = cfg.constraint_grid;
    SampledFunction fs = evaluate(f, xg);
    SampledFunction conv = convolve(fs, g);

    // argmax of f*g, ties toward the origin then lowest index
    std::int64_t best = 0;
    for (std::int64_t i = 1; i < xg.size(); ++i) {
        const double v = conv.at(i), bv = conv.at(best);
        if (v > bv ||
            (v == bv && xg.node(i).norm_inf() < xg.node(best).norm_inf())) {
            best = i;
        }
    }
    const double sup = conv.at(best);
    if (!(sup > 0.0)) throw std::domain_error("explicit measure: ||f*g|| vanishes");
    const Point x0 = xg.node(best);

    ExplicitMeasure out;
    out.x0 = x0;
    out.sup_conv = sup;
    const GridSpec& tg = cfg.atom_grid;
    out.measure.grid = tg;
    out.measure.weights.resize(static_cast<size_t>(tg.size()));
    for (std::int64_t j = 0; j < tg.size(); ++j) {
        const Point mid = 0.5 * (tg.node(j) + x0);
        const double d = f(mid);
        out.measure.weights[static_cast<size_t>(j)] = d * d / sup * tg.quad_weight(j);
    }
    out.payoff = out.measure.mass();
    return out;
}

ExplicitMeasure explicit_separation_measure(const FunctionExpr& f, const FunctionExpr& g,
                                            const GridConfig& cfg) {
    ExplicitMeasure base = explicit_covering_measure(f, g, cfg);  // reuse x0/sup scan
    const GridSpec& xg = cfg.constraint_grid;
    ExplicitMeasure out;
    out.x0 = base.x0;
    out.sup_conv = base.sup_conv;
    out.measure.grid = xg;
    out.measure.weights.resize(static_cast<size_t>(xg.size()));
    double payoff = 0.0;
    for (std::int64_t i = 0; i < xg.size(); ++i) {
        const double fv = f(xg.node(i));
        const double w = fv / base.sup_conv * xg.quad_weight(i);
        out.measure.weights[static_cast<size_t>(i)] = w;
        payoff += fv * w;
    }
    out.payoff = payoff;
    return out;
}

double verify_cover(const DiscreteMeasure& mu, const FunctionExpr& g, const FunctionExpr& f,
                    const GridSpec& grid) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const Point x = grid.node(i);
        double acc = 0.0;
        for (std::int64_t j = 0; j < mu.grid.size(); ++j) {
            const double w = mu.weights[static_cast<size_t>(j)];
            if (w == 0.0) continue;
            acc += w * g(x - mu.grid.node(j));
        }
        worst = std::min(worst, acc - f(x));
    }
    return worst;
}

double sup_convolved_measure(const DiscreteMeasure& rho, const FunctionExpr& g,
                             const GridSpec& grid) {
    double sup = 0.0;
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const Point x = grid.node(i);
        double acc = 0.0;
        for (std::int64_t j = 0; j < rho.grid.size(); ++j) {
            const double w = rho.weights[static_cast<size_t>(j)];
            if (w == 0.0) continue;
            acc += w * g(x - rho.grid.node(j));
        }
        sup = std::max(sup, acc);
    }
    return sup;
}

}  // namespace fcover
