#pragma once

#include <vector>

#include "fcover/sampled.hpp"

namespace fcover {

/// (f*g)(x_i) = sum_j f(t_j) g(x_i - t_j) w_j over f's grid with trapezoid
/// quadrature weights, g evaluated exactly off-grid. Output lives on f.grid.
SampledFunction convolve(const SampledFunction& f, const FunctionExpr& g);

/// Sup-convolution (Asplund product): out(x_i) = max_j f(t_j) g(x_i - t_j)
/// over f's grid nodes, g evaluated exactly. Brute-force semantics.
SampledFunction sup_convolve(const SampledFunction& f, const FunctionExpr& g);

/// Discrete Legendre transform: out(y) = max_i <y, x_i> - phi(x_i), the max
/// running over the grid nodes. Entries of phi may be +infinity (the code
/// treats anything >= 1e300 as infinite); at least one entry must be finite.
/// 1D runs in O(N+M) via the lower convex hull of (x_i, phi_i); 2D applies
/// the 1D pass per axis (the lattice max factorizes exactly).
std::vector<double> legendre(const GridSpec& grid, const std::vector<double>& phi,
                             const GridSpec& dual_grid);

/// Log-Legendre dual f* = exp(-L phi) with phi = -log f, tabulated on
/// dual_grid. Throws on identically-zero input.
SampledFunction log_dual(const SampledFunction& f, const GridSpec& dual_grid);

/// Level-set body K_f = {x : f(x) > threshold} with threshold exp(-n) by
/// default (n = grid dimension). Volume counts interior cells fully and
/// boundary-cut cells at half weight.
struct LevelSetBody {
    GridSpec grid;
    std::vector<bool> inside;
    double volume = 0.0;
    double threshold = 0.0;
    bool empty = true;
    Point bbox_lo, bbox_hi;
};

LevelSetBody level_set_body(const SampledFunction& f);
LevelSetBody level_set_body(const SampledFunction& f, double threshold);

/// Santalo product: integrate(f) * integrate(log_dual(f)). Requires f
/// centered: |barycenter| <= 1e-3 * window width per axis.
double santalo_product(const SampledFunction& f, const GridSpec& dual_grid);

}  // namespace fcover
