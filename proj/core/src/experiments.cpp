#include "fcover/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fcover {

namespace {

constexpr double kPi = 3.14159265358979323846;

GridSpec refine(const GridSpec& g) {
    if (g.dim() == 1) return GridSpec::make_1d(g.lo(0), g.hi(0), 2 * g.points(0) - 1);
    return GridSpec::make_2d(g.lo(0), g.hi(0), 2 * g.points(0) - 1, g.lo(1), g.hi(1),
                             2 * g.points(1) - 1);
}

/// out(y) = max over sample-grid nodes z of a(z) * b(y - z), b exact.
std::vector<double> star_values(const FunctionExpr& a, const FunctionExpr& b,
                                const GridSpec& sample, const GridSpec& out) {
    SampledFunction as = evaluate(a, sample);
    std::vector<double> vals(static_cast<size_t>(out.size()), 0.0);
    for (std::int64_t i = 0; i < out.size(); ++i) {
        const Point y = out.node(i);
        double best = 0.0;
        for (std::int64_t j = 0; j < sample.size(); ++j) {
            const double az = as.at(j);
            if (az == 0.0) continue;
            const double v = az * b(y - sample.node(j));
            if (v > best) best = v;
        }
        vals[static_cast<size_t>(i)] = best;
    }
    return vals;
}

double integral_of_star(const FunctionExpr& a, const FunctionExpr& b, const GridSpec& sample) {
    SampledFunction as = evaluate(a, sample);
    SampledFunction st = sup_convolve(as, b);
    return integrate(st);
}

void require_centered(const FunctionExpr& f, const GridSpec& sample, const char* who) {
    const Point b = barycenter(evaluate(f, sample));
    for (int k = 0; k < sample.dim(); ++k) {
        const double width = sample.hi(k) - sample.lo(k);
        if (std::fabs(b[k]) > 1e-3 * width)
            throw std::domain_error(std::string(who) + " requires a centered function");
    }
}

}  // namespace

DualityGapStudy duality_gap_study(const FunctionExpr& f, const FunctionExpr& g,
                                  const FunctionExpr& h, const GridConfig& base, int levels) {
    DualityGapStudy study;
    GridConfig cfg = base;
    for (int level = 0; level < levels; ++level) {
        CoveringResult cov = covering_number(f, g, h, cfg);
        CoveringResult sep = separation_number(f, FunctionExpr::reflect(g), h, cfg);
        DualityGapRow row;
        row.step = cfg.constraint_grid.step(0);
        row.n_constraints = cfg.constraint_grid.size();
        row.n_atoms = cfg.atom_grid.size();
        row.status = cov.status;
        if (cov.status == LpStatus::Optimal) {
            row.n_hat = cov.value_primal;
            row.mu_mass = cov.mu.mass();
        }
        if (sep.status == LpStatus::Optimal) row.m_hat = sep.value_dual;
        row.gap = std::fabs(row.n_hat - row.m_hat);
        study.rows.push_back(row);
        if (level == 0 && cov.status != LpStatus::Optimal)
            throw std::domain_error("duality study: infeasible at the coarsest level");
        if (level + 1 < levels) {
            cfg.constraint_grid = refine(cfg.constraint_grid);
            cfg.atom_grid = refine(cfg.atom_grid);
        }
    }

    for (size_t l = 1; l < study.rows.size(); ++l) {
        const double prev = study.rows[l - 1].n_hat;
        if (prev > 0.0 && study.rows[l].n_hat >= 1.10 * prev) study.divergence_suspected = true;
    }
    if (!study.rows.empty()) study.n_base = study.rows.front().n_hat;
    for (int k = 1; k <= 64; k *= 2) {
        FunctionExpr gk = FunctionExpr::scale_value(g, 1.0 + 1.0 / static_cast<double>(k));
        CoveringResult r = covering_number(f, gk, h, base);
        if (r.status == LpStatus::Optimal)
            study.gk_values.emplace_back(static_cast<double>(k), r.value_primal);
    }
    if (!study.gk_values.empty()) study.gk_limit = study.gk_values.back().second;
    return study;
}

HadwigerScan hadwiger_scan(const FunctionExpr& f, const std::vector<double>& lambdas,
                           const GridConfig& cfg) {
    if (!f.is_geometric_log_concave())
        throw std::domain_error("hadwiger scan needs a geometric log-concave function");
    HadwigerScan scan;
    scan.lambdas = lambdas;
    scan.even = f.is_even();
    const int n = cfg.constraint_grid.dim();
    scan.theorem_bound = scan.even ? std::ldexp(1.0, n) : std::ldexp(1.0, 2 * n);

    for (double lambda : lambdas) {
        if (!(lambda > 0.0) || lambda >= 1.0)
            throw std::invalid_argument("hadwiger scan needs lambda in (0,1)");
        FunctionExpr flam = FunctionExpr::hadwiger_scale(f, lambda);
        CoveringResult r = covering_number(f, flam, FunctionExpr::one(), cfg);
        if (r.status != LpStatus::Optimal)
            throw std::domain_error("hadwiger scan: instance not optimal at lambda=" +
                                    std::to_string(lambda));
        scan.values.push_back(r.value_primal);

        BoundsReport b = volume_bounds(f, flam, {2.0}, nullptr, cfg);
        scan.upper_bounds.push_back(b.upper_p.at(2.0));
    }

    // linear fit of N against u = 1 - lambda over the three largest lambdas,
    // evaluated at u = 0
    std::vector<std::pair<double, double>> pts;  // (u, value)
    for (size_t i = 0; i < lambdas.size(); ++i) pts.emplace_back(1.0 - lambdas[i], scan.values[i]);
    std::sort(pts.begin(), pts.end());
    const size_t use = std::min<size_t>(3, pts.size());
    double su = 0, sv = 0, suu = 0, suv = 0;
    for (size_t i = 0; i < use; ++i) {
        su += pts[i].first;
        sv += pts[i].second;
        suu += pts[i].first * pts[i].first;
        suv += pts[i].first * pts[i].second;
    }
    const double du = use * suu - su * su;
    if (use >= 2 && std::fabs(du) > 1e-15) {
        const double slope = (use * suv - su * sv) / du;
        scan.extrapolated_limit = (sv - slope * su) / static_cast<double>(use);
    } else {
        scan.extrapolated_limit = pts.empty() ? 0.0 : pts.front().second;
    }
    return scan;
}

KmConfig default_km_config(int dim) {
    KmConfig cfg;
    if (dim == 1) {
        cfg.primal.constraint_grid = GridSpec::symmetric(1, 6.0, 241);
        cfg.primal.atom_grid = GridSpec::symmetric(1, 8.0, 321);
        cfg.legendre_source = GridSpec::symmetric(1, 8.0, 1601);
        cfg.dual_step = 0.05;
        cfg.dual_constraint_halfwidth = 6.0;
        cfg.dual_atom_halfwidth = 8.0;
        cfg.dual_constraint_lp_step = 0.1;
        cfg.dual_atom_lp_step = 0.2;
    } else {
        cfg.primal.constraint_grid = GridSpec::symmetric(2, 3.0, 25);
        cfg.primal.atom_grid = GridSpec::symmetric(2, 4.0, 33);
        cfg.legendre_source = GridSpec::symmetric(2, 6.0, 97);
        cfg.dual_step = 0.25;
        cfg.dual_constraint_halfwidth = 3.0;
        cfg.dual_atom_halfwidth = 4.0;
        cfg.dual_constraint_lp_step = 0.25;
        cfg.dual_atom_lp_step = 0.5;
    }
    return cfg;
}

namespace {

GridSpec symmetric_lattice(int dim, double halfwidth, double step) {
    const std::int64_t half = static_cast<std::int64_t>(std::llround(halfwidth / step));
    return GridSpec::symmetric(dim, static_cast<double>(half) * step, 2 * half + 1);
}

}  // namespace

KonigMilmanReport konig_milman(const FunctionExpr& f, const FunctionExpr& g, const KmConfig& cfg) {
    require_centered(f, cfg.legendre_source, "konig_milman");
    require_centered(g, cfg.legendre_source, "konig_milman");
    const int n = cfg.legendre_source.dim();

    KonigMilmanReport rep;
    rep.primal = covering_number(f, g, FunctionExpr::one(), cfg.primal);

    const double tab_half = cfg.dual_constraint_halfwidth + cfg.dual_atom_halfwidth;
    GridSpec tab = symmetric_lattice(n, tab_half, cfg.dual_step);
    rep.f_dual = log_dual(evaluate(f, cfg.legendre_source), tab).source;
    rep.g_dual = log_dual(evaluate(g, cfg.legendre_source), tab).source;

    for (double s : {cfg.dual_constraint_lp_step, cfg.dual_atom_lp_step}) {
        const double q = s / cfg.dual_step;
        if (std::fabs(q - std::llround(q)) > 1e-9)
            throw std::invalid_argument("dual LP steps must be multiples of the tabulation step");
    }
    GridConfig dual_cfg;
    dual_cfg.constraint_grid =
        symmetric_lattice(n, cfg.dual_constraint_halfwidth, cfg.dual_constraint_lp_step);
    dual_cfg.atom_grid = symmetric_lattice(n, cfg.dual_atom_halfwidth, cfg.dual_atom_lp_step);
    rep.dual_side = covering_number(rep.g_dual, rep.f_dual, FunctionExpr::one(), dual_cfg);

    if (rep.primal.status == LpStatus::Optimal && rep.dual_side.status == LpStatus::Optimal &&
        rep.dual_side.value_primal > 0.0) {
        rep.ratio_per_dim =
            std::pow(rep.primal.value_primal / rep.dual_side.value_primal, 1.0 / n);
    }
    return rep;
}

EvenReductionReport even_reduction(const FunctionExpr& f, const FunctionExpr& g,
                                   const GridConfig& cfg, const GridSpec& sample_grid) {
    require_centered(f, sample_grid, "even_reduction");
    const int n = sample_grid.dim();
    const FunctionExpr one = FunctionExpr::one();
    const FunctionExpr f_fm = FunctionExpr::product(f, FunctionExpr::reflect(f));

    // f (star) f- tabulated on a lattice wide enough to serve both the
    // f-side values and the kernel-side differences
    const GridSpec& xg = cfg.constraint_grid;
    const GridSpec& tg = cfg.atom_grid;
    double tab_half = 0.0;
    for (int k = 0; k < n; ++k)
        tab_half = std::max({tab_half, std::fabs(xg.lo(k)) + std::fabs(tg.hi(k)),
                             std::fabs(xg.hi(k)) + std::fabs(tg.lo(k))});
    GridSpec tab = symmetric_lattice(n, tab_half, xg.step(0));
    FunctionExpr f_star_fm =
        FunctionExpr::tabulated(tab, star_values(f, FunctionExpr::reflect(f), sample_grid, tab));

    EvenReductionReport rep;
    rep.n_f_g = covering_number(f, g, one, cfg);
    rep.n_ffm_g = covering_number(f_fm, g, one, cfg);
    rep.n_fsfm_g = covering_number(f_star_fm, g, one, cfg);
    rep.n_g_f = covering_number(g, f, one, cfg);
    rep.n_g_ffm = covering_number(g, f_fm, one, cfg);
    rep.n_g_fsfm = covering_number(g, f_star_fm, one, cfg);

    const double int_f = integrate(evaluate(f, sample_grid));
    const double int_star = integrate(evaluate(f_star_fm, tab));
    rep.sup_conv_integral_ratio = int_f > 0.0 ? int_star / int_f : 0.0;

    const double base = rep.n_f_g.value_primal;
    if (base > 0.0) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const CoveringResult* r : {&rep.n_ffm_g, &rep.n_fsfm_g}) {
            lo = std::min(lo, r->value_primal / base);
            hi = std::max(hi, r->value_primal / base);
        }
        rep.chain_low = lo;
        rep.chain_high = hi;
    }
    return rep;
}

MpConfig default_mp_config(int dim) {
    MpConfig cfg;
    if (dim == 1) {
        cfg.cover.constraint_grid = GridSpec::symmetric(1, 6.0, 241);
        cfg.cover.atom_grid = GridSpec::symmetric(1, 8.0, 321);
        cfg.sample_grid = GridSpec::symmetric(1, 8.0, 1601);
        cfg.dual_tab_grid = GridSpec::symmetric(1, 14.0, 561);
    } else {
        cfg.cover.constraint_grid = GridSpec::symmetric(2, 3.0, 25);
        cfg.cover.atom_grid = GridSpec::symmetric(2, 4.0, 33);
        cfg.sample_grid = GridSpec::symmetric(2, 6.0, 81);
        cfg.dual_tab_grid = GridSpec::symmetric(2, 7.0, 57);
    }
    return cfg;
}

Mat m_position_map(const FunctionExpr& f, const GridSpec& sample_grid) {
    require_centered(f, sample_grid, "m_position_map");
    SampledFunction fs = evaluate(f, sample_grid);
    const int n = sample_grid.dim();

    double mass = 0.0;
    double mom2[3] = {0.0, 0.0, 0.0};  // xx, xy, yy
    for (std::int64_t i = 0; i < sample_grid.size(); ++i) {
        const double w = fs.at(i) * sample_grid.quad_weight(i);
        const Point x = sample_grid.node(i);
        mass += w;
        mom2[0] += w * x[0] * x[0];
        mom2[1] += w * x[0] * x[1];
        mom2[2] += w * x[1] * x[1];
    }
    if (!(mass > 0.0)) throw std::domain_error("m_position_map: zero integral");

    const double target = std::pow(2.0 * kPi, n / 2.0);
    if (n == 1) {
        // pure scaling: f~(x) = f(s x) with s = int f / sqrt(2 pi)
        return Mat(mass / target);
    }
    SymMat cov(mom2[0] / mass, mom2[1] / mass, mom2[2] / mass);
    SymEigen eig = sym_eigen(cov);
    if (!(eig.values[0] > 0.0)) throw std::domain_error("m_position_map: degenerate covariance");

    // unit-determinant shape factor V diag(sqrt(lambda_i)) V^T / det^{1/4}
    const double dquarter = std::pow(eig.values[0] * eig.values[1], 0.25);
    double r0 = std::sqrt(eig.values[0]) / dquarter, r1 = std::sqrt(eig.values[1]) / dquarter;
    const Point v0 = eig.vectors[0], v1 = eig.vectors[1];
    Mat shape(r0 * v0[0] * v0[0] + r1 * v1[0] * v1[0], r0 * v0[0] * v0[1] + r1 * v1[0] * v1[1],
              r0 * v0[1] * v0[0] + r1 * v1[1] * v1[0], r0 * v0[1] * v0[1] + r1 * v1[1] * v1[1]);
    const double s = std::sqrt(mass / target);
    return Mat(s * shape.m11, s * shape.m12, s * shape.m21, s * shape.m22);
}

namespace {

// support function of the inside-mask over dual nodes: max_x <y, x>
double support_against_mask(const LevelSetBody& body, const Point& y) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < body.grid.size(); ++i) {
        if (!body.inside[static_cast<size_t>(i)]) continue;
        best = std::max(best, y.dot(body.grid.node(i)));
    }
    return best;
}

}  // namespace

MPositionReport mposition(const FunctionExpr& f, const MpConfig& cfg,
                          const std::vector<FunctionExpr>& test_zoo) {
    const int n = cfg.sample_grid.dim();
    MPositionReport rep;
    rep.t_map = m_position_map(f, cfg.sample_grid);
    rep.f_tilde = FunctionExpr::linear_map(f, rep.t_map);

    SampledFunction fts = evaluate(rep.f_tilde, cfg.sample_grid);
    rep.integral_f = integrate(fts);

    SampledFunction fdual = log_dual(fts, cfg.dual_tab_grid);
    rep.f_tilde_dual = fdual.source;

    const FunctionExpr g0 =
        FunctionExpr::gaussian(n == 1 ? SymMat(1.0) : SymMat(1.0, 0.0, 1.0));
    const FunctionExpr one = FunctionExpr::one();

    rep.n_f_g0 = covering_number(rep.f_tilde, g0, one, cfg.cover);
    rep.n_g0_f = covering_number(g0, rep.f_tilde, one, cfg.cover);
    rep.n_fd_g0 = covering_number(rep.f_tilde_dual, g0, one, cfg.cover);
    rep.n_g0_fd = covering_number(g0, rep.f_tilde_dual, one, cfg.cover);

    double worst = 0.0;
    bool all_opt = true;
    for (const CoveringResult* r : {&rep.n_f_g0, &rep.n_g0_f, &rep.n_fd_g0, &rep.n_g0_fd}) {
        all_opt = all_opt && r->status == LpStatus::Optimal;
        worst = std::max(worst, r->value_primal);
    }
    rep.constant_estimate = all_opt ? std::pow(worst, 1.0 / n) : 0.0;

    LevelSetBody kf = level_set_body(fts);
    LevelSetBody kfd = level_set_body(fdual);
    rep.kf_volume = kf.volume;
    rep.kfdual_volume = kfd.volume;
    rep.vol_int_ratio = rep.integral_f > 0.0 ? kf.volume / rep.integral_f : 0.0;
    rep.vol_dual_ratio = kf.volume > 0.0 ? kfd.volume / kf.volume : 0.0;
    rep.santalo = rep.integral_f * integrate(fdual);

    // polar inclusion chain n (K_f)° ⊆ {Lphi <= n} ⊆ 2n (K_f)° on the dual grid
    rep.polar_inclusion_ok = true;
    const double nn = static_cast<double>(n);
    const double soft = 1e-9;
    for (std::int64_t i = 0; i < cfg.dual_tab_grid.size(); ++i) {
        const Point y = cfg.dual_tab_grid.node(i);
        const double sup = support_against_mask(kf, y);
        const double fstar = fdual.at(i);
        const double lphi = fstar > 0.0 ? -std::log(fstar) : std::numeric_limits<double>::infinity();
        const bool in_polar_n = sup <= nn * (1.0 + soft) + soft;
        const bool in_kdual = lphi <= nn * (1.0 + soft) + soft;
        const bool in_polar_2n = sup <= 2.0 * nn * (1.0 + soft) + soft;
        if ((in_polar_n && !in_kdual) || (in_kdual && !in_polar_2n)) {
            rep.polar_inclusion_ok = false;
            break;
        }
    }

    for (const FunctionExpr& h : test_zoo) {
        Mat th = m_position_map(h, cfg.sample_grid);
        FunctionExpr ht = FunctionExpr::linear_map(h, th);
        const double int_ft_ht = integral_of_star(rep.f_tilde, ht, cfg.sample_grid);
        const double int_g0_ht = integral_of_star(g0, ht, cfg.sample_grid);
        const double int_ht = integrate(evaluate(ht, cfg.sample_grid));
        RbmCheck chk;
        chk.name = h.to_string();
        chk.ratio = int_g0_ht > 0.0 ? int_ft_ht / int_g0_ht : 0.0;
        const double denom = std::pow(rep.integral_f, 1.0 / n) + std::pow(int_ht, 1.0 / n);
        chk.c_meas = denom > 0.0 ? std::pow(int_ft_ht, 1.0 / n) / denom : 0.0;
        rep.rbm.push_back(chk);
    }
    return rep;
}

MpEquivalenceReport mposition_equivalence(const MPositionReport& rep, const MpConfig& cfg) {
    const int n = cfg.sample_grid.dim();
    MpEquivalenceReport out;

    double worst_ratio = 1.0;
    bool vol_ok = true;
    const double tol = 1e-6;
    for (const RbmCheck& chk : rep.rbm) {
        if (!(chk.ratio > 0.0)) continue;
        worst_ratio = std::max({worst_ratio, chk.ratio, 1.0 / chk.ratio});
        if (chk.ratio > rep.n_f_g0.value_primal * (1.0 + tol) + tol) vol_ok = false;
        if (1.0 / chk.ratio > rep.n_g0_f.value_primal * (1.0 + tol) + tol) vol_ok = false;
    }
    out.vol_constant = std::pow(worst_ratio, 1.0 / n);
    out.vol_bounded_by_cov = vol_ok;

    double worst_cov = 0.0;
    for (const CoveringResult* r : {&rep.n_f_g0, &rep.n_g0_f, &rep.n_fd_g0, &rep.n_g0_fd})
        worst_cov = std::max(worst_cov, r->value_primal);
    out.cov_constant = std::pow(worst_cov, 1.0 / n);

    const FunctionExpr g0 =
        FunctionExpr::gaussian(n == 1 ? SymMat(1.0) : SymMat(1.0, 0.0, 1.0));
    const double two_n = std::ldexp(1.0, n);
    const double int_ft_g0 = integral_of_star(rep.f_tilde, g0, cfg.sample_grid);
    const double int_g0_g0 = integral_of_star(g0, g0, cfg.sample_grid);
    const double r0 = int_g0_g0 > 0.0 ? int_ft_g0 / int_g0_g0 : 0.0;
    bool cov_ok = rep.n_f_g0.value_primal <= two_n * r0 * (1.0 + tol) + tol;
    const double bound2 = rep.integral_f > 0.0 ? two_n * int_ft_g0 / rep.integral_f
                                               : std::numeric_limits<double>::infinity();
    cov_ok = cov_ok && rep.n_g0_f.value_primal <= bound2 * (1.0 + tol) + tol;
    out.cov_bounded_by_vol = cov_ok;
    return out;
}

}  // namespace fcover
