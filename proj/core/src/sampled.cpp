#include "fcover/sampled.hpp"

#include <cmath>
#include <stdexcept>

namespace fcover {

SampledFunction evaluate(const FunctionExpr& expr, const GridSpec& grid) {
    if (expr.dim() != 0 && expr.dim() != grid.dim())
        throw EvalError("expression/grid dimension mismatch");
    SampledFunction sf{grid, {}, expr};
    sf.values.resize(static_cast<size_t>(grid.size()));
    for (std::int64_t i = 0; i < grid.size(); ++i)
        sf.values[static_cast<size_t>(i)] = expr(grid.node(i));
    return sf;
}

SampledFunction from_values(const GridSpec& grid, std::vector<double> values) {
    FunctionExpr src = FunctionExpr::tabulated(grid, values);
    return SampledFunction{grid, std::move(values), std::move(src)};
}

double integrate(const SampledFunction& sf) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < sf.grid.size(); ++i)
        acc += sf.at(i) * sf.grid.quad_weight(i);
    return acc;
}

double sup_norm(const SampledFunction& sf) {
    double m = 0.0;
    for (double v : sf.values) m = std::max(m, v);
    return m;
}

Point barycenter(const SampledFunction& sf) {
    double mass = 0.0;
    double mom[2] = {0.0, 0.0};
    for (std::int64_t i = 0; i < sf.grid.size(); ++i) {
        const double w = sf.at(i) * sf.grid.quad_weight(i);
        const Point x = sf.grid.node(i);
        mass += w;
        mom[0] += w * x[0];
        mom[1] += w * x[1];
    }
    if (!(mass > 0.0)) throw std::domain_error("barycenter of a zero-integral function");
    return sf.grid.dim() == 1 ? Point(mom[0] / mass) : Point(mom[0] / mass, mom[1] / mass);
}

namespace {

// Three-term scan along one line of values, updating the worst
// multiplicative defect of v_i^2 >= v_{i-1} v_{i+1}.
void scan_line(const std::vector<double>& v, const std::vector<std::int64_t>& idx, double tol,
               LogConcavityReport& rep) {
    for (size_t i = 1; i + 1 < idx.size(); ++i) {
        const double mid = v[static_cast<size_t>(idx[i])];
        const double prod = v[static_cast<size_t>(idx[i - 1])] * v[static_cast<size_t>(idx[i + 1])];
        if (prod == 0.0) continue;
        if (mid == 0.0) {
            // zero between two positives violates log-concavity outright
            rep.is_log_concave = false;
            rep.worst_violation = std::max(rep.worst_violation, 1.0);
            continue;
        }
        const double defect = prod / (mid * mid) - 1.0;
        if (defect > rep.worst_violation) rep.worst_violation = defect;
        if (defect > tol) rep.is_log_concave = false;
    }
}

}  // namespace

LogConcavityReport check_geometric_log_concave(const SampledFunction& sf, double tol) {
    LogConcavityReport rep;
    const GridSpec& g = sf.grid;
    const std::int64_t n0 = g.points(0);
    const std::int64_t n1 = g.dim() == 2 ? g.points(1) : 1;

    std::vector<std::int64_t> line;
    if (g.dim() == 1) {
        line.resize(static_cast<size_t>(n0));
        for (std::int64_t i = 0; i < n0; ++i) line[static_cast<size_t>(i)] = i;
        scan_line(sf.values, line, tol, rep);
    } else {
        for (std::int64_t j = 0; j < n1; ++j) {  // rows
            line.clear();
            for (std::int64_t i = 0; i < n0; ++i) line.push_back(g.flat_index(i, j));
            scan_line(sf.values, line, tol, rep);
        }
        for (std::int64_t i = 0; i < n0; ++i) {  // columns
            line.clear();
            for (std::int64_t j = 0; j < n1; ++j) line.push_back(g.flat_index(i, j));
            scan_line(sf.values, line, tol, rep);
        }
        // diagonals in both directions
        for (std::int64_t s = -(n1 - 1); s < n0; ++s) {
            line.clear();
            for (std::int64_t j = 0; j < n1; ++j) {
                std::int64_t i = s + j;
                if (i >= 0 && i < n0) line.push_back(g.flat_index(i, j));
            }
            if (line.size() >= 3) scan_line(sf.values, line, tol, rep);
        }
        for (std::int64_t s = 0; s < n0 + n1 - 1; ++s) {
            line.clear();
            for (std::int64_t j = 0; j < n1; ++j) {
                std::int64_t i = s - j;
                if (i >= 0 && i < n0) line.push_back(g.flat_index(i, j));
            }
            if (line.size() >= 3) scan_line(sf.values, line, tol, rep);
        }
    }

    rep.sup_value = sup_norm(sf);
    const std::int64_t center = g.nearest_node(g.dim() == 1 ? Point(0.0) : Point(0.0, 0.0));
    const double at_center = sf.at(center);
    const double step2 = g.max_step() * g.max_step();
    rep.is_geometric = rep.is_log_concave && at_center >= rep.sup_value * (1.0 - tol) &&
                       rep.sup_value <= 1.0 + tol && rep.sup_value >= 1.0 - step2 - tol;
    return rep;
}

}  // namespace fcover
