#pragma once

#include <vector>

#include "fcover/expr.hpp"
#include "fcover/grid.hpp"

namespace fcover {

/// A FunctionExpr evaluated on every node of a grid. The source expression
/// is retained so off-grid points can still be evaluated exactly.
struct SampledFunction {
    GridSpec grid;
    std::vector<double> values;
    FunctionExpr source;

    double at(std::int64_t flat) const { return values[static_cast<size_t>(flat)]; }
};

/// Nonnegative atomic measure sum_j w_j * delta_{t_j} supported on the grid
/// nodes. Integration against a function u is sum_j w_j * u(t_j) with u
/// evaluated exactly.
struct DiscreteMeasure {
    GridSpec grid;
    std::vector<double> weights;

    double mass() const {
        double m = 0.0;
        for (double w : weights) m += w;
        return m;
    }

    double integrate_against(const FunctionExpr& u) const {
        double m = 0.0;
        for (std::int64_t j = 0; j < grid.size(); ++j)
            m += weights[static_cast<size_t>(j)] * u(grid.node(j));
        return m;
    }
};

/// Samples expr at every node; values are exact up to the 1e-300 underflow
/// floor. Throws on dimension mismatch.
SampledFunction evaluate(const FunctionExpr& expr, const GridSpec& grid);

/// Builds a sampled function directly from values, wrapping them as a
/// tabulated expression.
SampledFunction from_values(const GridSpec& grid, std::vector<double> values);

/// Tensor trapezoid rule (boundary nodes half-weighted).
double integrate(const SampledFunction& sf);

/// Max over grid values.
double sup_norm(const SampledFunction& sf);

/// (int x f) / (int f) componentwise, same quadrature as integrate.
/// Throws on nonpositive integral.
Point barycenter(const SampledFunction& sf);

struct LogConcavityReport {
    bool is_log_concave = true;
    bool is_geometric = true;      // sup attained at node nearest 0, value ~ 1
    double worst_violation = 0.0;  // worst multiplicative three-term defect
    double sup_value = 0.0;
};

/// Checks discrete midpoint log-concavity v_i^2 >= v_{i-1} v_{i+1} along
/// every grid line (rows, columns and both diagonal directions in 2D) with
/// multiplicative tolerance, and that the sup sits at the node nearest the
/// origin with value within grid resolution of 1.
///
/// Two normalizations of the geometric class circulate: f(0) = 1 (the
/// maximum) and a variant that pins f(0) = 0. This checker, and everything
/// downstream of it, uses max f = f(0) = 1.
LogConcavityReport check_geometric_log_concave(const SampledFunction& sf, double tol = 1e-9);

}  // namespace fcover
