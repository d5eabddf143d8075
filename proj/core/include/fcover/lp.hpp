#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fcover {

/// Dense linear program, fixed sense:
///     minimize c.w   subject to   A w >= b,  w >= 0
/// with A of size rows x cols (row-major).
struct LpProblem {
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::vector<double> a;  // row-major, rows*cols entries
    std::vector<double> b;
    std::vector<double> c;

    double at(std::int64_t i, std::int64_t j) const {
        return a[static_cast<size_t>(i * cols + j)];
    }
    void validate() const;
};

enum class LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    NumericalError,
};

std::string to_string(LpStatus s);

struct ToleranceConfig {
    double feas_tol = 1e-8;       // absolute residual tolerance
    double gap_tol = 1e-7;        // relative duality gap tolerance
    double pivot_tol = 1e-9;      // smallest acceptable pivot magnitude
    double reduced_cost_tol = 1e-9;
    std::int64_t max_iterations = 0;  // 0 = automatic (scales with problem size)
};

struct LpSolution {
    LpStatus status = LpStatus::NumericalError;
    double primal_value = 0.0;        // c.w
    double dual_value = 0.0;          // b.rho
    std::vector<double> w;            // primal, length cols
    std::vector<double> rho;          // dual, length rows
    double gap = 0.0;                 // |c.w - b.rho|
    std::int64_t iterations = 0;
    double condition_estimate = 0.0;  // rough κ₁ of the final basis
    std::int64_t infeasible_row = -1; // witness constraint when Infeasible
};

/// Deterministic dense solver. Runs the primal simplex on the transposed
/// (packing) form, which is feasible from the all-slack basis whenever
/// c >= 0; a phase-1 pass covers general c. Entering variable: most
/// negative reduced cost, lowest index on ties; switches to Bland's rule
/// after a degenerate stall so it cannot cycle.
LpSolution solve(const LpProblem& p, const ToleranceConfig& tol = {});

/// Residuals of a claimed optimal pair, recomputed in extended precision.
struct CertificateReport {
    double primal_infeasibility = 0.0;  // max(0, max_i b_i - (Aw)_i)
    double dual_infeasibility = 0.0;    // max(0, max_j (A^T rho)_j - c_j)
    double primal_negativity = 0.0;     // max(0, -min_j w_j)
    double dual_negativity = 0.0;       // max(0, -min_i rho_i)
    double gap = 0.0;                   // |c.w - b.rho|
    double complementarity_primal = 0.0;  // max_j w_j (c - A^T rho)_j
    double complementarity_dual = 0.0;    // max_i rho_i ((Aw)_i - b_i)
};

CertificateReport certify(const LpProblem& p, const LpSolution& s);

}  // namespace fcover
