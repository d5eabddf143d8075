#include "fcover/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fcover {

namespace {

constexpr double kInfThreshold = 1e300;

inline bool is_inf(double v) { return !(v < kInfThreshold); }

}  // namespace

SampledFunction convolve(const SampledFunction& f, const FunctionExpr& g) {
    if (g.dim() != 0 && g.dim() != f.grid.dim())
        throw EvalError("convolve: dimension mismatch");
    const GridSpec& grid = f.grid;
    const std::int64_t n = grid.size();

    std::vector<double> weighted(static_cast<size_t>(n));
    for (std::int64_t j = 0; j < n; ++j)
        weighted[static_cast<size_t>(j)] = f.at(j) * grid.quad_weight(j);

    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        const Point x = grid.node(i);
        double acc = 0.0;
        for (std::int64_t j = 0; j < n; ++j) {
            const double w = weighted[static_cast<size_t>(j)];
            if (w == 0.0) continue;
            acc += w * g(x - grid.node(j));
        }
        out[static_cast<size_t>(i)] = acc;
    }
    return from_values(grid, std::move(out));
}

SampledFunction sup_convolve(const SampledFunction& f, const FunctionExpr& g) {
    if (g.dim() != 0 && g.dim() != f.grid.dim())
        throw EvalError("sup_convolve: dimension mismatch");
    const GridSpec& grid = f.grid;
    const std::int64_t n = grid.size();

    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        const Point x = grid.node(i);
        double best = 0.0;
        for (std::int64_t j = 0; j < n; ++j) {
            const double fz = f.at(j);
            if (fz == 0.0) continue;
            const double v = fz * g(x - grid.node(j));
            if (v > best) best = v;
        }
        out[static_cast<size_t>(i)] = best;
    }
    return from_values(grid, std::move(out));
}

namespace {

// 1D conjugate core. xs must be ascending and uniformly spaced is not
// required here. Values >= kInfThreshold are skipped. Queries ys ascending.
void conjugate_1d(const std::vector<double>& xs, const std::vector<double>& phi,
                  const std::vector<double>& ys, std::vector<double>& out) {
    const size_t n = xs.size();
    // lower convex hull of the finite points (x_i, phi_i)
    static thread_local std::vector<size_t> hull;
    hull.clear();
    for (size_t i = 0; i < n; ++i) {
        if (is_inf(phi[i])) continue;
        while (hull.size() >= 2) {
            const size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            // pop b if it lies on or above the segment a--i
            const long double lhs = (static_cast<long double>(phi[b]) - phi[a]) *
                                    (static_cast<long double>(xs[i]) - xs[a]);
            const long double rhs = (static_cast<long double>(phi[i]) - phi[a]) *
                                    (static_cast<long double>(xs[b]) - xs[a]);
            if (lhs >= rhs) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    if (hull.empty()) throw std::domain_error("legendre: all-infinite input");

    size_t k = 0;
    for (size_t q = 0; q < ys.size(); ++q) {
        const double y = ys[q];
        // advance while moving right along the hull improves x*y - phi
        while (k + 1 < hull.size()) {
            const size_t a = hull[k], b = hull[k + 1];
            if (xs[b] * y - phi[b] >= xs[a] * y - phi[a]) ++k;
            else break;
        }
        out[q] = xs[hull[k]] * y - phi[hull[k]];
    }
}

}  // namespace

std::vector<double> legendre(const GridSpec& grid, const std::vector<double>& phi,
                             const GridSpec& dual_grid) {
    if (static_cast<std::int64_t>(phi.size()) != grid.size())
        throw std::invalid_argument("legendre: phi does not match grid");
    if (grid.dim() != dual_grid.dim()) throw std::invalid_argument("legendre: dimension mismatch");

    bool any_finite = false;
    for (double v : phi) any_finite = any_finite || !is_inf(v);
    if (!any_finite) throw std::domain_error("legendre: all-infinite input");

    if (grid.dim() == 1) {
        std::vector<double> xs(static_cast<size_t>(grid.size()));
        for (std::int64_t i = 0; i < grid.size(); ++i) xs[static_cast<size_t>(i)] = grid.coord(0, i);
        std::vector<double> ys(static_cast<size_t>(dual_grid.size()));
        for (std::int64_t i = 0; i < dual_grid.size(); ++i)
            ys[static_cast<size_t>(i)] = dual_grid.coord(0, i);
        std::vector<double> out(ys.size());
        conjugate_1d(xs, phi, ys, out);
        return out;
    }

    // 2D: conjugate along axis 1 for each fixed x0, then along axis 0 for
    // each fixed y1, negating the intermediate values in between.
    const std::int64_t n0 = grid.points(0), n1 = grid.points(1);
    const std::int64_t m0 = dual_grid.points(0), m1 = dual_grid.points(1);

    std::vector<double> x1(static_cast<size_t>(n1)), y1(static_cast<size_t>(m1));
    for (std::int64_t j = 0; j < n1; ++j) x1[static_cast<size_t>(j)] = grid.coord(1, j);
    for (std::int64_t j = 0; j < m1; ++j) y1[static_cast<size_t>(j)] = dual_grid.coord(1, j);

    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> mid(static_cast<size_t>(n0 * m1), neg_inf);
    std::vector<double> line(static_cast<size_t>(n1)), lout(static_cast<size_t>(m1));
    for (std::int64_t i0 = 0; i0 < n0; ++i0) {
        bool finite = false;
        for (std::int64_t j = 0; j < n1; ++j) {
            line[static_cast<size_t>(j)] = phi[static_cast<size_t>(grid.flat_index(i0, j))];
            finite = finite || !is_inf(line[static_cast<size_t>(j)]);
        }
        if (!finite) continue;  // this column never contributes
        conjugate_1d(x1, line, y1, lout);
        for (std::int64_t j = 0; j < m1; ++j)
            mid[static_cast<size_t>(i0 * m1 + j)] = lout[static_cast<size_t>(j)];
    }

    std::vector<double> x0(static_cast<size_t>(n0)), y0(static_cast<size_t>(m0));
    for (std::int64_t i = 0; i < n0; ++i) x0[static_cast<size_t>(i)] = grid.coord(0, i);
    for (std::int64_t i = 0; i < m0; ++i) y0[static_cast<size_t>(i)] = dual_grid.coord(0, i);

    std::vector<double> out(static_cast<size_t>(dual_grid.size()));
    std::vector<double> col(static_cast<size_t>(n0)), cout_(static_cast<size_t>(m0));
    const double pos_inf = std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j < m1; ++j) {
        for (std::int64_t i = 0; i < n0; ++i) {
            const double v = mid[static_cast<size_t>(i * m1 + j)];
            col[static_cast<size_t>(i)] = (v == neg_inf) ? pos_inf : -v;
        }
        conjugate_1d(x0, col, y0, cout_);
        for (std::int64_t i = 0; i < m0; ++i)
            out[static_cast<size_t>(dual_grid.flat_index(i, j))] = cout_[static_cast<size_t>(i)];
    }
    return out;
}

SampledFunction log_dual(const SampledFunction& f, const GridSpec& dual_grid) {
    const std::int64_t n = f.grid.size();
    std::vector<double> phi(static_cast<size_t>(n));
    bool any_positive = false;
    const double pos_inf = std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = f.at(i);
        if (v > 0.0) {
            phi[static_cast<size_t>(i)] = -std::log(v);
            any_positive = true;
        } else {
            phi[static_cast<size_t>(i)] = pos_inf;
        }
    }
    if (!any_positive) throw std::domain_error("log_dual of an identically-zero function");

    std::vector<double> lphi = legendre(f.grid, phi, dual_grid);
    std::vector<double> out(lphi.size());
    for (size_t i = 0; i < lphi.size(); ++i) {
        const double v = std::exp(-lphi[i]);
        out[i] = v < 1e-300 ? 0.0 : v;
    }
    return from_values(dual_grid, std::move(out));
}

LevelSetBody level_set_body(const SampledFunction& f) {
    return level_set_body(f, std::exp(-static_cast<double>(f.grid.dim())));
}

LevelSetBody level_set_body(const SampledFunction& f, double threshold) {
    const GridSpec& g = f.grid;
    LevelSetBody body;
    body.grid = g;
    body.threshold = threshold;
    body.inside.assign(static_cast<size_t>(g.size()), false);
    body.bbox_lo = g.dim() == 1 ? Point(0.0) : Point(0.0, 0.0);
    body.bbox_hi = body.bbox_lo;

    bool first = true;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        if (f.at(i) > threshold) {
            body.inside[static_cast<size_t>(i)] = true;
            body.empty = false;
            const Point x = g.node(i);
            if (first) {
                body.bbox_lo = body.bbox_hi = x;
                first = false;
            } else {
                for (int k = 0; k < g.dim(); ++k) {
                    body.bbox_lo[k] = std::min(body.bbox_lo[k], x[k]);
                    body.bbox_hi[k] = std::max(body.bbox_hi[k], x[k]);
                }
            }
        }
    }
    if (body.empty) return body;

    // cell counting: full cells count cell_volume, cut cells half
    double vol = 0.0;
    const double cv = g.cell_volume();
    if (g.dim() == 1) {
        for (std::int64_t i = 0; i + 1 < g.points(0); ++i) {
            const int c = static_cast<int>(body.inside[static_cast<size_t>(i)]) +
                          static_cast<int>(body.inside[static_cast<size_t>(i + 1)]);
            if (c == 2) vol += cv;
            else if (c == 1) vol += cv / 2.0;
        }
    } else {
        for (std::int64_t j = 0; j + 1 < g.points(1); ++j)
            for (std::int64_t i = 0; i + 1 < g.points(0); ++i) {
                const int c = static_cast<int>(body.inside[static_cast<size_t>(g.flat_index(i, j))]) +
                              static_cast<int>(body.inside[static_cast<size_t>(g.flat_index(i + 1, j))]) +
                              static_cast<int>(body.inside[static_cast<size_t>(g.flat_index(i, j + 1))]) +
                              static_cast<int>(body.inside[static_cast<size_t>(g.flat_index(i + 1, j + 1))]);
                if (c == 4) vol += cv;
                else if (c > 0) vol += cv / 2.0;
            }
    }
    body.volume = vol;
    return body;
}

double santalo_product(const SampledFunction& f, const GridSpec& dual_grid) {
    const Point b = barycenter(f);
    for (int k = 0; k < f.grid.dim(); ++k) {
        const double width = f.grid.hi(k) - f.grid.lo(k);
        if (std::fabs(b[k]) > 1e-3 * width)
            throw std::domain_error("santalo_product requires a centered function");
    }
    return integrate(f) * integrate(log_dual(f, dual_grid));
}

}  // namespace fcover
