// fcover: functional covering numbers of log-concave functions at desk scale.
//
// Subcommands assemble the discretized covering/separation programs, solve
// them with the built-in simplex, and emit deterministic CSV/JSON tables
// (plus optional SVG scans). Exit codes: 0 success, 1 usage/config error,
// 2 infeasible or unbounded instance (status lands in the output table).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "fcover/experiments.hpp"
#include "fcover/io.hpp"
#include "fcover/parse.hpp"

using namespace fcover;

namespace {

struct GridArgs {
    std::vector<double> window;  // 2 or 4 entries
    std::vector<std::int64_t> n; // 1 or 2 entries
    std::vector<double> atoms;   // 3 or 6 entries, optional
    bool force_window = false;
    bool allow_unpadded = false;
    std::int64_t max_nodes = kDefaultNodeCap;
};

std::int64_t env_node_cap() {
    if (const char* e = std::getenv("FCOVER_MAX_NODES")) {
        char* end = nullptr;
        const long long v = std::strtoll(e, &end, 10);
        if (end != e && v >= 4) return v;
    }
    return kDefaultNodeCap;
}

int dim_of(const GridArgs& g) {
    if (g.window.size() == 2) return 1;
    if (g.window.size() == 4) return 2;
    throw CLI::ValidationError("--window takes 2 (1D) or 4 (2D) values");
}

GridSpec constraint_grid(const GridArgs& g) {
    const int d = dim_of(g);
    if (static_cast<int>(g.n.size()) != d)
        throw CLI::ValidationError("--n takes one point count per axis");
    if (d == 1) return GridSpec::make_1d(g.window[0], g.window[1], g.n[0], g.max_nodes);
    return GridSpec::make_2d(g.window[0], g.window[1], g.n[0], g.window[2], g.window[3], g.n[1],
                             g.max_nodes);
}

GridSpec atom_grid(const GridArgs& g, const GridSpec& constraints, const FunctionExpr& kernel,
                   double tail_eps) {
    const int d = dim_of(g);
    if (!g.atoms.empty()) {
        if (d == 1) {
            if (g.atoms.size() != 3) throw CLI::ValidationError("--atoms takes LO HI N in 1D");
            return GridSpec::make_1d(g.atoms[0], g.atoms[1],
                                     static_cast<std::int64_t>(g.atoms[2]), g.max_nodes);
        }
        if (g.atoms.size() != 6)
            throw CLI::ValidationError("--atoms takes LO1 HI1 N1 LO2 HI2 N2 in 2D");
        return GridSpec::make_2d(g.atoms[0], g.atoms[1], static_cast<std::int64_t>(g.atoms[2]),
                                 g.atoms[3], g.atoms[4], static_cast<std::int64_t>(g.atoms[5]),
                                 g.max_nodes);
    }
    // pad the constraint window by the kernel's effective support radius
    const double pad = kernel.tail_radius(tail_eps).value_or(1.0);
    if (d == 1) {
        const double s = constraints.step(0);
        const std::int64_t extra = static_cast<std::int64_t>(std::ceil(pad / s));
        return GridSpec::make_1d(constraints.lo(0) - extra * s, constraints.hi(0) + extra * s,
                                 constraints.points(0) + 2 * extra, g.max_nodes);
    }
    GridSpec out = constraints;
    const double s0 = constraints.step(0), s1 = constraints.step(1);
    const std::int64_t e0 = static_cast<std::int64_t>(std::ceil(pad / s0));
    const std::int64_t e1 = static_cast<std::int64_t>(std::ceil(pad / s1));
    return GridSpec::make_2d(constraints.lo(0) - e0 * s0, constraints.hi(0) + e0 * s0,
                             constraints.points(0) + 2 * e0, constraints.lo(1) - e1 * s1,
                             constraints.hi(1) + e1 * s1, constraints.points(1) + 2 * e1,
                             g.max_nodes);
}

// the discretization window must see only negligible tails of the sampled
// functions; supported(decaying) functions are checked on the boundary nodes
void check_window(const GridSpec& grid, const FunctionExpr& e, double tail_eps, bool force,
                  const char* who) {
    if (force) return;
    if (!e.tail_radius(tail_eps).has_value()) return;  // no known decay (weights)
    double worst = 0.0;
    if (grid.dim() == 1) {
        worst = std::max(e(Point(grid.lo(0))), e(Point(grid.hi(0))));
    } else {
        for (std::int64_t i = 0; i < grid.points(0); ++i) {
            worst = std::max(worst, e(Point(grid.coord(0, i), grid.lo(1))));
            worst = std::max(worst, e(Point(grid.coord(0, i), grid.hi(1))));
        }
        for (std::int64_t j = 0; j < grid.points(1); ++j) {
            worst = std::max(worst, e(Point(grid.lo(0), grid.coord(1, j))));
            worst = std::max(worst, e(Point(grid.hi(0), grid.coord(1, j))));
        }
    }
    if (worst > tail_eps)
        throw CLI::ValidationError(std::string(who) +
                                   " is not negligible at the window boundary (max " +
                                   format_number(worst) + " > 1e-10); widen --window or pass "
                                   "--force-window");
}

struct OutputArgs {
    std::string path;
    std::string format = "csv";
    std::string plot;
};

void emit(const Table& t, const OutputArgs& out) {
    const std::string text = out.format == "json" ? to_json(t) : to_csv(t);
    if (out.path.empty() || out.path == "-") {
        std::cout << text;
    } else {
        write_file_atomic(out.path, text);
    }
}

void emit_plot(const OutputArgs& out, const std::vector<double>& xs, const std::vector<double>& ys,
               const std::string& xl, const std::string& yl) {
    if (out.plot.empty()) return;
    write_file_atomic(out.plot, to_svg_plot(xs, ys, xl, yl));
}

Table result_table(const GridConfig& cfg, const CoveringResult& r) {
    Table t;
    t.columns = {"step", "n_constraints", "n_atoms",     "value_primal", "value_dual",
                 "gap",  "lower_bound",   "upper_bound", "status",       "runtime_ms"};
    t.add_row({cfg.constraint_grid.step(0), cfg.constraint_grid.size(), cfg.atom_grid.size(),
               r.value_primal, r.value_dual, r.gap, r.lower_bound, r.upper_bound,
               to_string(r.status), r.runtime_ms});
    return t;
}

int status_exit(LpStatus s) {
    return s == LpStatus::Optimal ? 0 : 2;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    size_t at = 0;
    while (at < text.size()) {
        size_t comma = text.find(',', at);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stod(text.substr(at, comma - at)));
        at = comma + 1;
    }
    return out;
}

void add_grid_options(CLI::App* cmd, GridArgs& grid, bool atoms_too = true) {
    cmd->add_option("--window", grid.window, "constraint window: LO HI (1D) or LO1 HI1 LO2 HI2")
        ->expected(-1);
    cmd->add_option("--n", grid.n, "constraint points per axis")->expected(-1);
    if (atoms_too)
        cmd->add_option("--atoms", grid.atoms,
                        "atom grid: LO HI N (1D) or LO1 HI1 N1 LO2 HI2 N2; default pads the "
                        "window by the kernel support radius")
            ->expected(-1);
    cmd->add_flag("--force-window", grid.force_window, "skip the boundary-tail validation");
    cmd->add_flag("--allow-unpadded", grid.allow_unpadded,
                  "keep going when some constraint cannot be met by any atom");
    cmd->add_option("--max-nodes", grid.max_nodes, "grid node cap (env FCOVER_MAX_NODES)");
}

void add_output_options(CLI::App* cmd, OutputArgs& out, bool plot_too = false) {
    cmd->add_option("-o,--output", out.path, "output path ('-' = stdout)");
    cmd->add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (plot_too) cmd->add_option("--plot", out.plot, "write an SVG scan to this path");
}

GridConfig make_config(const GridArgs& grid, const FunctionExpr& f, const FunctionExpr& g,
                       double tail_eps = 1e-10) {
    GridConfig cfg;
    cfg.constraint_grid = constraint_grid(grid);
    cfg.atom_grid = atom_grid(grid, cfg.constraint_grid, g, tail_eps);
    cfg.allow_unpadded = grid.allow_unpadded;
    // the atom window is the full discretization domain; tails of both
    // functions must be negligible at its boundary
    check_window(cfg.atom_grid, f, tail_eps, grid.force_window, "f");
    check_window(cfg.atom_grid, g, tail_eps, grid.force_window, "g");
    return cfg;
}

// ----------------------------------------------------------------- commands

int run_cover(const std::string& fs, const std::string& gs, const std::string& hs,
              const GridArgs& grid, const OutputArgs& out, bool separation) {
    FunctionExpr f = parse_expr(fs), g = parse_expr(gs);
    FunctionExpr h = hs.empty() ? FunctionExpr::one() : parse_expr(hs);
    GridConfig cfg = make_config(grid, f, g);
    CoveringResult r = separation ? separation_number(f, g, h, cfg)
                                  : covering_number(f, g, h, cfg);
    emit(result_table(cfg, r), out);
    return status_exit(r.status);
}

int run_bounds(const std::string& fs, const std::string& gs, const std::string& hs,
               const std::string& plist, const GridArgs& grid, const OutputArgs& out) {
    FunctionExpr f = parse_expr(fs), g = parse_expr(gs);
    std::optional<FunctionExpr> h;
    if (!hs.empty()) h = parse_expr(hs);
    GridConfig cfg = make_config(grid, f, g);
    BoundsReport b = volume_bounds(f, g, parse_list(plist), h ? &*h : nullptr, cfg);

    Table t;
    t.columns = {"quantity", "value"};
    t.add_row({std::string("lower_ratio"), b.lower_ratio});
    for (const auto& [p, v] : b.upper_p) t.add_row({"upper_p_" + format_number(p), v});
    t.add_row({std::string("lower_sq"), b.lower_sq});
    t.add_row({std::string("upper_sq"), b.upper_sq});
    if (b.even_variant) {
        t.add_row({std::string("even_lower"), b.even_variant->first});
        t.add_row({std::string("even_upper"), b.even_variant->second});
    }
    if (b.weighted_variant) {
        t.add_row({std::string("weighted_lower"), b.weighted_variant->first});
        t.add_row({std::string("weighted_upper"), b.weighted_variant->second});
    }
    emit(t, out);
    return 0;
}

int run_duality(const std::string& fs, const std::string& gs, const std::string& hs, int levels,
                const GridArgs& grid, const OutputArgs& out) {
    FunctionExpr f = parse_expr(fs), g = parse_expr(gs);
    FunctionExpr h = hs.empty() ? FunctionExpr::one() : parse_expr(hs);
    GridConfig cfg = make_config(grid, f, g);
    DualityGapStudy study = duality_gap_study(f, g, h, cfg, levels);

    Table t;
    t.columns = {"kind", "param", "n_constraints", "n_atoms", "n_hat", "m_hat",
                 "gap",  "mu_mass", "status"};
    for (const auto& row : study.rows)
        t.add_row({std::string("refine"), row.step, row.n_constraints, row.n_atoms, row.n_hat,
                   row.m_hat, row.gap, row.mu_mass, to_string(row.status)});
    for (const auto& [k, v] : study.gk_values)
        t.add_row({std::string("kernel-limit"), k, std::int64_t(0), std::int64_t(0), v,
                   0.0, 0.0, 0.0, std::string("optimal")});
    t.add_row({std::string("divergence-suspected"), 0.0, std::int64_t(0), std::int64_t(0),
               static_cast<double>(study.divergence_suspected ? 1 : 0), 0.0, 0.0, 0.0,
               std::string(study.divergence_suspected ? "suspected" : "stable")});
    emit(t, out);

    std::vector<double> xs, ys;
    for (const auto& row : study.rows) {
        xs.push_back(row.step);
        ys.push_back(row.n_hat);
    }
    emit_plot(out, xs, ys, "step", "covering value");
    return 0;
}

int run_hadwiger(const std::string& fs, const std::string& lambdas, const GridArgs& grid,
                 const OutputArgs& out) {
    FunctionExpr f = parse_expr(fs);
    GridConfig cfg = make_config(grid, f, f);
    HadwigerScan scan = hadwiger_scan(f, parse_list(lambdas), cfg);

    Table t;
    t.columns = {"lambda", "n_hat", "upper_bound_p2", "extrapolated_limit", "theorem_bound"};
    for (size_t i = 0; i < scan.lambdas.size(); ++i)
        t.add_row({scan.lambdas[i], scan.values[i], scan.upper_bounds[i], scan.extrapolated_limit,
                   scan.theorem_bound});
    emit(t, out);
    emit_plot(out, scan.lambdas, scan.values, "lambda", "covering value");
    return 0;
}

int run_konig_milman(const std::string& fs, const std::string& gs, const GridArgs& grid,
                     const OutputArgs& out) {
    FunctionExpr f = parse_expr(fs), g = parse_expr(gs);
    const int d = grid.window.empty() ? (f.dim() == 0 ? 1 : f.dim()) : dim_of(grid);
    KmConfig cfg = default_km_config(d);
    if (!grid.window.empty()) {
        cfg.primal = make_config(grid, f, g);
        cfg.dual_constraint_halfwidth =
            std::fabs(cfg.primal.constraint_grid.hi(0));
        cfg.dual_atom_halfwidth = std::fabs(cfg.primal.atom_grid.hi(0));
    }
    KonigMilmanReport rep = konig_milman(f, g, cfg);

    Table t;
    t.columns = {"quantity", "value"};
    t.add_row({std::string("n_fg"), rep.primal.value_primal});
    t.add_row({std::string("n_dual"), rep.dual_side.value_primal});
    t.add_row({std::string("ratio_per_dim"), rep.ratio_per_dim});
    t.add_row({std::string("gap_fg"), rep.primal.gap});
    t.add_row({std::string("gap_dual"), rep.dual_side.gap});
    t.add_row({std::string("status_fg"), to_string(rep.primal.status)});
    t.add_row({std::string("status_dual"), to_string(rep.dual_side.status)});
    emit(t, out);
    return status_exit(rep.primal.status) == 0 ? status_exit(rep.dual_side.status) : 2;
}

int run_mposition(const std::string& fs, const std::string& zoo_list, const GridArgs& grid,
                  const OutputArgs& out) {
    FunctionExpr f = parse_expr(fs);
    const int d = grid.window.empty() ? (f.dim() == 0 ? 1 : f.dim()) : dim_of(grid);
    MpConfig cfg = default_mp_config(d);
    std::vector<FunctionExpr> zoo;
    if (zoo_list.empty()) {
        zoo.push_back(FunctionExpr::gaussian(d == 1 ? SymMat(1.0) : SymMat(1.0, 0.0, 1.0)));
        zoo.push_back(FunctionExpr::expnorm(2.0, 1.0));
    } else {
        size_t at = 0;
        while (at < zoo_list.size()) {
            size_t semi = zoo_list.find(';', at);
            if (semi == std::string::npos) semi = zoo_list.size();
            zoo.push_back(parse_expr(zoo_list.substr(at, semi - at)));
            at = semi + 1;
        }
    }
    MPositionReport rep = mposition(f, cfg, zoo);
    MpEquivalenceReport eq = mposition_equivalence(rep, cfg);

    Table t;
    t.columns = {"quantity", "value"};
    t.add_row({std::string("t11"), rep.t_map.m11});
    if (d == 2) {
        t.add_row({std::string("t12"), rep.t_map.m12});
        t.add_row({std::string("t21"), rep.t_map.m21});
        t.add_row({std::string("t22"), rep.t_map.m22});
    }
    t.add_row({std::string("integral"), rep.integral_f});
    t.add_row({std::string("n_f_g0"), rep.n_f_g0.value_primal});
    t.add_row({std::string("n_g0_f"), rep.n_g0_f.value_primal});
    t.add_row({std::string("n_fdual_g0"), rep.n_fd_g0.value_primal});
    t.add_row({std::string("n_g0_fdual"), rep.n_g0_fd.value_primal});
    t.add_row({std::string("constant_estimate"), rep.constant_estimate});
    t.add_row({std::string("kf_volume"), rep.kf_volume});
    t.add_row({std::string("kfdual_volume"), rep.kfdual_volume});
    t.add_row({std::string("santalo"), rep.santalo});
    t.add_row({std::string("vol_int_ratio"), rep.vol_int_ratio});
    t.add_row({std::string("vol_dual_ratio"), rep.vol_dual_ratio});
    t.add_row({std::string("polar_inclusion_ok"), std::int64_t(rep.polar_inclusion_ok ? 1 : 0)});
    for (const RbmCheck& chk : rep.rbm) {
        t.add_row({"rbm_ratio " + chk.name, chk.ratio});
        t.add_row({"rbm_c " + chk.name, chk.c_meas});
    }
    t.add_row({std::string("equiv_vol_constant"), eq.vol_constant});
    t.add_row({std::string("equiv_cov_constant"), eq.cov_constant});
    t.add_row({std::string("equiv_vol_bounded_by_cov"), std::int64_t(eq.vol_bounded_by_cov)});
    t.add_row({std::string("equiv_cov_bounded_by_vol"), std::int64_t(eq.cov_bounded_by_vol)});
    emit(t, out);
    return 0;
}

int run_transform(const std::string& op, const std::string& fs, const std::string& gs,
                  const GridArgs& grid, const std::vector<double>& dual_window,
                  std::int64_t dual_n, const OutputArgs& out) {
    FunctionExpr f = parse_expr(fs);
    GridSpec g1 = constraint_grid(grid);
    check_window(g1, f, 1e-10, grid.force_window, "f");

    Table t;
    if (op == "conv" || op == "supconv") {
        if (gs.empty()) throw CLI::ValidationError("--g is required for " + op);
        FunctionExpr g = parse_expr(gs);
        SampledFunction r =
            op == "conv" ? convolve(evaluate(f, g1), g) : sup_convolve(evaluate(f, g1), g);
        t.columns = g1.dim() == 1 ? std::vector<std::string>{"x", "value"}
                                  : std::vector<std::string>{"x", "y", "value"};
        for (std::int64_t i = 0; i < g1.size(); ++i) {
            const Point p = g1.node(i);
            if (g1.dim() == 1) t.add_row({p[0], r.at(i)});
            else t.add_row({p[0], p[1], r.at(i)});
        }
    } else if (op == "legendre" || op == "logdual") {
        if (dual_window.size() != 2 || dual_n < 2)
            throw CLI::ValidationError("--dual-window LO HI and --dual-n are required");
        GridSpec dg = g1.dim() == 1
                          ? GridSpec::make_1d(dual_window[0], dual_window[1], dual_n, grid.max_nodes)
                          : GridSpec::make_2d(dual_window[0], dual_window[1], dual_n,
                                              dual_window[0], dual_window[1], dual_n,
                                              grid.max_nodes);
        SampledFunction fs_ = evaluate(f, g1);
        if (op == "logdual") {
            SampledFunction r = log_dual(fs_, dg);
            t.columns = dg.dim() == 1 ? std::vector<std::string>{"y", "value"}
                                      : std::vector<std::string>{"y1", "y2", "value"};
            for (std::int64_t i = 0; i < dg.size(); ++i) {
                const Point p = dg.node(i);
                if (dg.dim() == 1) t.add_row({p[0], r.at(i)});
                else t.add_row({p[0], p[1], r.at(i)});
            }
        } else {
            std::vector<double> phi(static_cast<size_t>(g1.size()));
            for (std::int64_t i = 0; i < g1.size(); ++i) {
                const double v = fs_.at(i);
                phi[static_cast<size_t>(i)] =
                    v > 0 ? -std::log(v) : std::numeric_limits<double>::infinity();
            }
            std::vector<double> l = legendre(g1, phi, dg);
            t.columns = dg.dim() == 1 ? std::vector<std::string>{"y", "value"}
                                      : std::vector<std::string>{"y1", "y2", "value"};
            for (std::int64_t i = 0; i < dg.size(); ++i) {
                const Point p = dg.node(i);
                if (dg.dim() == 1) t.add_row({p[0], l[static_cast<size_t>(i)]});
                else t.add_row({p[0], p[1], l[static_cast<size_t>(i)]});
            }
        }
    } else if (op == "levelset") {
        LevelSetBody body = level_set_body(evaluate(f, g1));
        t.columns = {"quantity", "value"};
        t.add_row({std::string("threshold"), body.threshold});
        t.add_row({std::string("volume"), body.volume});
        t.add_row({std::string("empty"), std::int64_t(body.empty ? 1 : 0)});
        for (int k = 0; k < g1.dim(); ++k) {
            t.add_row({"bbox_lo_" + std::to_string(k), body.bbox_lo[k]});
            t.add_row({"bbox_hi_" + std::to_string(k), body.bbox_hi[k]});
        }
    } else if (op == "santalo") {
        if (dual_window.size() != 2 || dual_n < 2)
            throw CLI::ValidationError("--dual-window LO HI and --dual-n are required");
        GridSpec dg = g1.dim() == 1
                          ? GridSpec::make_1d(dual_window[0], dual_window[1], dual_n, grid.max_nodes)
                          : GridSpec::make_2d(dual_window[0], dual_window[1], dual_n,
                                              dual_window[0], dual_window[1], dual_n,
                                              grid.max_nodes);
        t.columns = {"quantity", "value"};
        t.add_row({std::string("santalo"), santalo_product(evaluate(f, g1), dg)});
    } else {
        throw CLI::ValidationError("unknown --op " + op);
    }
    emit(t, out);
    return 0;
}

int run_facts(std::uint64_t seed, int count, const OutputArgs& out) {
    std::vector<FactCheck> checks = fact_suite(seed, count);
    Table t;
    t.columns = {"fact", "instances", "worst", "tol", "pass"};
    bool all = true;
    for (const FactCheck& c : checks) {
        t.add_row({c.name, std::int64_t(c.instances), c.worst, c.tol, std::int64_t(c.pass)});
        all = all && c.pass;
    }
    emit(t, out);
    return all ? 0 : 2;
}

// config file mirrors the flag set of each subcommand
int run_from_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open config " + path);
    nlohmann::json doc = nlohmann::json::parse(in);

    const std::string command = doc.at("command").get<std::string>();
    GridArgs grid;
    grid.max_nodes = env_node_cap();
    if (doc.contains("window")) grid.window = doc["window"].get<std::vector<double>>();
    if (doc.contains("n")) grid.n = doc["n"].get<std::vector<std::int64_t>>();
    if (doc.contains("atoms")) grid.atoms = doc["atoms"].get<std::vector<double>>();
    if (doc.contains("force_window")) grid.force_window = doc["force_window"].get<bool>();
    if (doc.contains("allow_unpadded")) grid.allow_unpadded = doc["allow_unpadded"].get<bool>();
    if (doc.contains("max_nodes")) grid.max_nodes = doc["max_nodes"].get<std::int64_t>();

    OutputArgs out;
    if (doc.contains("output")) out.path = doc["output"].get<std::string>();
    if (doc.contains("format")) out.format = doc["format"].get<std::string>();
    if (doc.contains("plot")) out.plot = doc["plot"].get<std::string>();

    auto str = [&](const char* key) {
        return doc.contains(key) ? doc[key].get<std::string>() : std::string();
    };

    if (command == "cover" || command == "separate")
        return run_cover(str("f"), str("g"), str("h"), grid, out, command == "separate");
    if (command == "bounds")
        return run_bounds(str("f"), str("g"), str("h"),
                          doc.contains("p_list") ? str("p_list") : "1.5,2,3", grid, out);
    if (command == "duality")
        return run_duality(str("f"), str("g"), str("h"),
                           doc.contains("levels") ? doc["levels"].get<int>() : 3, grid, out);
    if (command == "hadwiger") return run_hadwiger(str("f"), str("lambdas"), grid, out);
    if (command == "konig-milman") return run_konig_milman(str("f"), str("g"), grid, out);
    if (command == "mposition") return run_mposition(str("f"), str("zoo"), grid, out);
    if (command == "transform")
        return run_transform(str("op"), str("f"), str("g"), grid,
                             doc.contains("dual_window")
                                 ? doc["dual_window"].get<std::vector<double>>()
                                 : std::vector<double>{},
                             doc.contains("dual_n") ? doc["dual_n"].get<std::int64_t>() : 0, out);
    if (command == "facts")
        return run_facts(doc.contains("seed") ? doc["seed"].get<std::uint64_t>() : 1,
                         doc.contains("count") ? doc["count"].get<int>() : 65, out);
    throw CLI::ValidationError("unknown command in config: " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"functional covering numbers of log-concave functions"};
    app.require_subcommand(0, 1);
    app.set_help_flag("--help", "print help and exit");

    std::string config_path;
    app.add_option("--config", config_path, "run from a JSON config instead of flags");

    std::string f_expr, g_expr, h_expr, p_list = "1.5,2,3", lambdas, op, zoo;
    std::uint64_t seed = 1;
    int count = 65, levels = 3;
    std::vector<double> dual_window;
    std::int64_t dual_n = 0;
    GridArgs grid;
    grid.max_nodes = env_node_cap();
    OutputArgs out;

    auto subcommand = [&](const std::string& name, const std::string& desc) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->set_help_flag("--help", "print help and exit");
        return cmd;
    };

    CLI::App* cover = subcommand("cover", "covering number N(f, g, h)");
    CLI::App* separate = subcommand("separate", "separation number M(f, g, h)");
    for (CLI::App* cmd : {cover, separate}) {
        cmd->add_option("--f", f_expr, "function to cover")->required();
        cmd->add_option("--g", g_expr, "covering kernel")->required();
        cmd->add_option("--h", h_expr, "weight (default: one)");
        add_grid_options(cmd, grid);
        add_output_options(cmd, out);
    }

    CLI::App* bounds = subcommand("bounds", "integral bounds on the covering number");
    bounds->add_option("--f", f_expr)->required();
    bounds->add_option("--g", g_expr)->required();
    bounds->add_option("--h", h_expr, "optional weight");
    bounds->add_option("--p-list", p_list, "comma-separated exponents > 1");
    add_grid_options(bounds, grid);
    add_output_options(bounds, out);

    CLI::App* duality = subcommand("duality", "duality-gap refinement study");
    duality->add_option("--f", f_expr)->required();
    duality->add_option("--g", g_expr)->required();
    duality->add_option("--h", h_expr);
    duality->add_option("--levels", levels, "refinement levels (step halving)");
    add_grid_options(duality, grid);
    add_output_options(duality, out, true);

    CLI::App* hadwiger = subcommand("hadwiger", "self-covering scan N(f, f_lambda)");
    hadwiger->add_option("--f", f_expr)->required();
    hadwiger->add_option("--lambdas", lambdas, "comma-separated values in (0,1)")->required();
    add_grid_options(hadwiger, grid);
    add_output_options(hadwiger, out, true);

    CLI::App* km = subcommand("konig-milman", "covering duality under the log-Legendre transform");
    km->add_option("--f", f_expr)->required();
    km->add_option("--g", g_expr)->required();
    add_grid_options(km, grid);
    add_output_options(km, out);

    CLI::App* mp = subcommand("mposition", "M-position normalization and diagnostics");
    mp->add_option("--f", f_expr)->required();
    mp->add_option("--zoo", zoo, "semicolon-separated test functions");
    add_grid_options(mp, grid);
    add_output_options(mp, out);

    CLI::App* transform = subcommand("transform", "apply one analytic transform");
    transform->add_option("--op", op, "conv|supconv|legendre|logdual|levelset|santalo")->required();
    transform->add_option("--f", f_expr)->required();
    transform->add_option("--g", g_expr, "second function for conv/supconv");
    transform->add_option("--dual-window", dual_window, "LO HI")->expected(-1);
    transform->add_option("--dual-n", dual_n, "dual grid points per axis");
    add_grid_options(transform, grid, false);
    add_output_options(transform, out);

    CLI::App* facts = subcommand("facts", "randomized identity/inequality suite");
    facts->add_option("--seed", seed, "random seed");
    facts->add_option("--count", count, "number of randomized combinations");
    add_output_options(facts, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems exit 1, help exits 0
    }

    try {
        if (!config_path.empty()) return run_from_config(config_path);
        if (cover->parsed()) return run_cover(f_expr, g_expr, h_expr, grid, out, false);
        if (separate->parsed()) return run_cover(f_expr, g_expr, h_expr, grid, out, true);
        if (bounds->parsed()) return run_bounds(f_expr, g_expr, h_expr, p_list, grid, out);
        if (duality->parsed()) return run_duality(f_expr, g_expr, h_expr, levels, grid, out);
        if (hadwiger->parsed()) return run_hadwiger(f_expr, lambdas, grid, out);
        if (km->parsed()) return run_konig_milman(f_expr, g_expr, grid, out);
        if (mp->parsed()) return run_mposition(f_expr, zoo, grid, out);
        if (transform->parsed())
            return run_transform(op, f_expr, g_expr, grid, dual_window, dual_n, out);
        if (facts->parsed()) return run_facts(seed, count, out);
        std::cerr << app.help() << std::endl;
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "expression error: " << e.what() << std::endl;
        return 1;
    } catch (const PaddingError& e) {
        std::cerr << "grid error: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
