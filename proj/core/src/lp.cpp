#include "fcover/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fcover {

void LpProblem::validate() const {
    if (rows < 1 || cols < 1) throw std::invalid_argument("lp: empty problem");
    if (rows * cols > (std::int64_t(1) << 24)) throw std::invalid_argument("lp: matrix too large");
    if (cols > 8192) throw std::invalid_argument("lp: column count beyond the dense-basis envelope");
    if (static_cast<std::int64_t>(a.size()) != rows * cols ||
        static_cast<std::int64_t>(b.size()) != rows || static_cast<std::int64_t>(c.size()) != cols)
        throw std::invalid_argument("lp: inconsistent dimensions");
    for (double v : a)
        if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite matrix entry");
    for (double v : b)
        if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite rhs entry");
    for (double v : c)
        if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite cost entry");
}

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration_limit";
        case LpStatus::NumericalError: return "numerical_error";
    }
    return "unknown";
}

namespace {

// Primal simplex on the transposed (packing) program
//     max b.rho   s.t.  A^T rho <= c,  rho >= 0
// in standard equality form with one slack per row and artificials where
// c_j < 0. Row j of the tableau is the packing constraint of covering
// column j; structural variable i is the covering constraint i. At
// optimality the simplex multipliers give the covering primal w.
class PackingSimplex {
public:
    PackingSimplex(const LpProblem& p, const ToleranceConfig& tol) : p_(p), tol_(tol) {
        m_ = p.cols;  // tableau rows
        k_ = p.rows;  // structural variables
        sign_.resize(static_cast<size_t>(m_));
        rhs_.resize(static_cast<size_t>(m_));
        for (std::int64_t j = 0; j < m_; ++j) {
            const double cj = p.c[static_cast<size_t>(j)];
            sign_[static_cast<size_t>(j)] = cj >= 0.0 ? 1.0 : -1.0;
            rhs_[static_cast<size_t>(j)] = std::fabs(cj);
        }
        n_total_ = k_ + 2 * m_;  // structurals, slacks, artificials (slots)
        max_iter_ = tol.max_iterations > 0 ? tol.max_iterations : 20000 + 40 * (m_ + k_);
    }

    LpSolution run() {
        LpSolution sol;
        init_basis();

        bool need_phase1 = false;
        for (std::int64_t j = 0; j < m_; ++j) need_phase1 |= basis_[static_cast<size_t>(j)] >= k_ + m_;

        if (need_phase1) {
            phase_ = 1;
            Outcome out = iterate(sol);
            if (out != Outcome::Optimal) return sol;  // limit / numerical trouble
            double art_sum = 0.0;
            for (std::int64_t j = 0; j < m_; ++j)
                if (basis_[static_cast<size_t>(j)] >= k_ + m_) art_sum += xb_[static_cast<size_t>(j)];
            if (art_sum > tol_.feas_tol * (1.0 + norm_rhs())) {
                // packing infeasible: covering problem is unbounded unless it
                // is itself infeasible; probe covering feasibility.
                return classify_packing_infeasible(sol);
            }
        }

        phase_ = 2;
        loosened_tol_ = 0.0;
        std::fill(devex_.begin(), devex_.end(), 1.0);
        Outcome out = iterate(sol);
        if (out == Outcome::Unbounded) {
            sol.status = LpStatus::Infeasible;  // unbounded packing = infeasible covering
            sol.infeasible_row = last_entering_ < k_ ? last_entering_ : -1;
            return sol;
        }
        if (out != Outcome::Optimal) return sol;
        extract(sol);
        return sol;
    }

private:
    enum class Outcome { Optimal, Unbounded, Limit, Numerical };

    double norm_rhs() const {
        double s = 0.0;
        for (double v : rhs_) s = std::max(s, std::fabs(v));
        return s;
    }

    // variable classification
    bool is_structural(std::int64_t v) const { return v < k_; }
    bool is_slack(std::int64_t v) const { return v >= k_ && v < k_ + m_; }
    bool is_artificial(std::int64_t v) const { return v >= k_ + m_; }

    double cost_of(std::int64_t v) const {
        if (phase_ == 1) return is_artificial(v) ? 1.0 : 0.0;
        return is_structural(v) ? -p_.b[static_cast<size_t>(v)] : 0.0;
    }

    // column of variable v in the standard form, written into col_
    void load_column(std::int64_t v) {
        col_.assign(static_cast<size_t>(m_), 0.0);
        if (is_structural(v)) {
            const double* row = p_.a.data() + v * m_;
            for (std::int64_t j = 0; j < m_; ++j)
                col_[static_cast<size_t>(j)] = sign_[static_cast<size_t>(j)] * row[j];
        } else if (is_slack(v)) {
            const std::int64_t j = v - k_;
            col_[static_cast<size_t>(j)] = sign_[static_cast<size_t>(j)];
        } else {
            col_[static_cast<size_t>(v - k_ - m_)] = 1.0;
        }
    }

    void init_basis() {
        basis_.resize(static_cast<size_t>(m_));
        in_basis_.assign(static_cast<size_t>(n_total_), false);
        for (std::int64_t j = 0; j < m_; ++j) {
            const std::int64_t var = sign_[static_cast<size_t>(j)] > 0.0 ? k_ + j : k_ + m_ + j;
            basis_[static_cast<size_t>(j)] = var;
            in_basis_[static_cast<size_t>(var)] = true;
        }
        binv_.assign(static_cast<size_t>(m_ * m_), 0.0);
        for (std::int64_t j = 0; j < m_; ++j) binv_[static_cast<size_t>(j * m_ + j)] = 1.0;
        xb_ = rhs_;
        devex_.assign(static_cast<size_t>(n_total_), 1.0);
    }

    // y = c_B^T Binv
    void btran(std::vector<double>& y) const {
        y.assign(static_cast<size_t>(m_), 0.0);
        for (std::int64_t r = 0; r < m_; ++r) {
            const double cb = cost_of(basis_[static_cast<size_t>(r)]);
            if (cb == 0.0) continue;
            const double* row = binv_.data() + r * m_;
            for (std::int64_t j = 0; j < m_; ++j) y[static_cast<size_t>(j)] += cb * row[j];
        }
    }

    // alpha = Binv * column(v)
    void ftran(std::int64_t v, std::vector<double>& alpha) const {
        alpha.assign(static_cast<size_t>(m_), 0.0);
        if (!is_structural(v)) {
            const std::int64_t j = is_slack(v) ? v - k_ : v - k_ - m_;
            const double s = is_slack(v) ? sign_[static_cast<size_t>(j)] : 1.0;
            for (std::int64_t r = 0; r < m_; ++r)
                alpha[static_cast<size_t>(r)] = s * binv_[static_cast<size_t>(r * m_ + j)];
            return;
        }
        const double* row = p_.a.data() + v * m_;
        for (std::int64_t r = 0; r < m_; ++r) {
            const double* brow = binv_.data() + r * m_;
            double acc = 0.0;
            for (std::int64_t j = 0; j < m_; ++j)
                acc += brow[j] * sign_[static_cast<size_t>(j)] * row[j];
            alpha[static_cast<size_t>(r)] = acc;
        }
    }

    double effective_tol() const { return std::max(tol_.reduced_cost_tol, loosened_tol_); }

    double objective_estimate() const {
        double obj = 0.0;
        for (std::int64_t r = 0; r < m_; ++r) {
            const std::int64_t v = basis_[static_cast<size_t>(r)];
            if (is_structural(v)) obj += p_.b[static_cast<size_t>(v)] * xb_[static_cast<size_t>(r)];
        }
        return obj;
    }

    // Devex-priced entering variable (d^2 / weight), Bland's rule when the
    // anti-cycling fallback is engaged. Returns -1 when none (optimal).
    std::int64_t price(const std::vector<double>& y) {
        std::int64_t best = -1;
        const double tol_eff = effective_tol();
        double best_score = 0.0, best_d = 0.0;
        auto offer = [&](std::int64_t v, double d) {
            const double score = d * d / devex_[static_cast<size_t>(v)];
            if (score > best_score * (1.0 + 1e-12) ||
                (score > best_score * (1.0 - 1e-12) && best >= 0 && v < best)) {
                best_score = score;
                best_d = d;
                best = v;
            }
        };
        // structural variables: d_i = cost_i - ys . A_row_i
        static thread_local std::vector<double> ys;
        ys.resize(static_cast<size_t>(m_));
        for (std::int64_t j = 0; j < m_; ++j)
            ys[static_cast<size_t>(j)] = y[static_cast<size_t>(j)] * sign_[static_cast<size_t>(j)];
        for (std::int64_t i = 0; i < k_; ++i) {
            if (in_basis_[static_cast<size_t>(i)]) continue;
            const double* row = p_.a.data() + i * m_;
            double dot = 0.0;
            for (std::int64_t j = 0; j < m_; ++j) dot += ys[static_cast<size_t>(j)] * row[j];
            const double d = cost_of(i) - dot;
            if (d >= -tol_eff) continue;
            if (bland_) {
                reduced_cost_of_entering_ = d;
                return i;
            }
            offer(i, d);
        }
        for (std::int64_t j = 0; j < m_; ++j) {
            const std::int64_t v = k_ + j;
            if (in_basis_[static_cast<size_t>(v)]) continue;
            // slack column has a single entry sign_j, so y.col = y_j*sign_j
            const double dv = cost_of(v) - y[static_cast<size_t>(j)] * sign_[static_cast<size_t>(j)];
            if (dv >= -tol_eff) continue;
            if (bland_) {
                reduced_cost_of_entering_ = dv;
                return v;
            }
            offer(v, dv);
        }
        reduced_cost_of_entering_ = best >= 0 ? best_d : 0.0;
        return best;
    }

    // Devex weight update: needs the pivot row z = e_r^T Binv Atilde over
    // nonbasic columns.
    void update_devex(std::int64_t entering, std::int64_t r, double pivot_element) {
        const double ge = devex_[static_cast<size_t>(entering)];
        const double scale = ge / (pivot_element * pivot_element);
        static thread_local std::vector<double> zs;
        zs.resize(static_cast<size_t>(m_));
        const double* brow = binv_.data() + r * m_;
        for (std::int64_t j = 0; j < m_; ++j)
            zs[static_cast<size_t>(j)] = brow[j] * sign_[static_cast<size_t>(j)];
        double max_w = 1.0;
        for (std::int64_t i = 0; i < k_; ++i) {
            if (in_basis_[static_cast<size_t>(i)] || i == entering) continue;
            const double* row = p_.a.data() + i * m_;
            double z = 0.0;
            for (std::int64_t j = 0; j < m_; ++j) z += zs[static_cast<size_t>(j)] * row[j];
            double& w = devex_[static_cast<size_t>(i)];
            w = std::max(w, z * z * scale);
            max_w = std::max(max_w, w);
        }
        for (std::int64_t j = 0; j < m_; ++j) {
            const std::int64_t v = k_ + j;
            if (in_basis_[static_cast<size_t>(v)] || v == entering) continue;
            const double z = brow[j] * sign_[static_cast<size_t>(j)];
            double& w = devex_[static_cast<size_t>(v)];
            w = std::max(w, z * z * scale);
            max_w = std::max(max_w, w);
        }
        // the leaving variable becomes nonbasic with the transformed weight
        devex_[static_cast<size_t>(basis_[static_cast<size_t>(r)])] =
            std::max(scale, 1.0);
        if (max_w > 1e10) std::fill(devex_.begin(), devex_.end(), 1.0);  // reset framework
    }

    Outcome iterate(LpSolution& sol) {
        std::vector<double> y, alpha;
        std::int64_t degenerate_streak = 0;
        while (true) {
            if (sol.iterations >= max_iter_) {
                sol.status = LpStatus::IterationLimit;
                return Outcome::Limit;
            }
            btran(y);
            const std::int64_t e = price(y);
            if (e < 0) {
                if (!refreshed_at_opt_) {
                    // refactor once and re-check before declaring optimality
                    if (!refactor()) {
                        sol.status = LpStatus::NumericalError;
                        sol.condition_estimate = condition_;
                        return Outcome::Numerical;
                    }
                    refreshed_at_opt_ = true;
                    continue;
                }
                refreshed_at_opt_ = false;
                return Outcome::Optimal;
            }
            refreshed_at_opt_ = false;
            last_entering_ = e;
            ftran(e, alpha);

            // ratio test; basic artificials may not grow in phase 2, and are
            // forced out through a degenerate pivot instead
            std::int64_t leave = -1;
            double theta = std::numeric_limits<double>::infinity();
            for (std::int64_t r = 0; r < m_; ++r) {
                const double a = alpha[static_cast<size_t>(r)];
                const std::int64_t bv = basis_[static_cast<size_t>(r)];
                double ratio;
                if (a > tol_.pivot_tol) {
                    ratio = std::max(0.0, xb_[static_cast<size_t>(r)]) / a;
                } else if (phase_ == 2 && is_artificial(bv) && a < -tol_.pivot_tol) {
                    ratio = 0.0;
                } else {
                    continue;
                }
                if (ratio < theta - 1e-12 ||
                    (ratio < theta + 1e-12 &&
                     (leave < 0 || bv < basis_[static_cast<size_t>(leave)]))) {
                    theta = ratio;
                    leave = r;
                }
            }
            if (leave < 0) {
                sol.status = LpStatus::Unbounded;
                return Outcome::Unbounded;
            }

            const double pivot_element = alpha[static_cast<size_t>(leave)];
            if (!bland_) update_devex(e, leave, pivot_element);
            pivot(e, leave, alpha, theta);
            ++sol.iterations;

            // stall handling: if the objective stops moving, refactor once
            // and accept marginal reduced costs; the final certificate is
            // recomputed from the original data either way
            const double gain = theta * std::fabs(reduced_cost_of_entering_);
            if (theta <= 1e-12 || gain <= 1e-13 * (1.0 + std::fabs(objective_estimate()))) {
                ++degenerate_streak;
                if (degenerate_streak > 2 * (m_ + k_)) bland_ = true;
                if (degenerate_streak > 4 * (m_ + k_)) {
                    if (!refactor()) {
                        sol.status = LpStatus::NumericalError;
                        sol.condition_estimate = condition_;
                        return Outcome::Numerical;
                    }
                    loosened_tol_ = loosened_tol_ == 0.0
                                        ? 100.0 * tol_.reduced_cost_tol
                                        : std::min(1e-5, 10.0 * loosened_tol_);
                    degenerate_streak = 0;
                    bland_ = false;
                }
            } else {
                degenerate_streak = 0;
                bland_ = false;
            }

            if (sol.iterations % 128 == 0 && !refactor()) {
                sol.status = LpStatus::NumericalError;
                sol.condition_estimate = condition_;
                return Outcome::Numerical;
            }
        }
    }

    void pivot(std::int64_t entering, std::int64_t r, const std::vector<double>& alpha,
               double theta) {
        const double piv = alpha[static_cast<size_t>(r)];
        double* prow = binv_.data() + r * m_;
        for (std::int64_t j = 0; j < m_; ++j) prow[j] /= piv;
        for (std::int64_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = alpha[static_cast<size_t>(i)];
            if (f == 0.0) continue;
            double* row = binv_.data() + i * m_;
            for (std::int64_t j = 0; j < m_; ++j) row[j] -= f * prow[j];
            xb_[static_cast<size_t>(i)] -= f * theta;
            if (xb_[static_cast<size_t>(i)] < 0.0 && xb_[static_cast<size_t>(i)] > -1e-11)
                xb_[static_cast<size_t>(i)] = 0.0;
        }
        xb_[static_cast<size_t>(r)] = theta;
        in_basis_[static_cast<size_t>(basis_[static_cast<size_t>(r)])] = false;
        basis_[static_cast<size_t>(r)] = entering;
        in_basis_[static_cast<size_t>(entering)] = true;
    }

    // Gauss-Jordan refactorization of Binv from the current basis; also
    // recomputes xb. Returns false on a (near-)singular basis.
    bool refactor() {
        const std::int64_t m = m_;
        std::vector<double> mat(static_cast<size_t>(m * 2 * m), 0.0);  // [B | I]
        std::vector<double> colbuf;
        for (std::int64_t cidx = 0; cidx < m; ++cidx) {
            load_column(basis_[static_cast<size_t>(cidx)]);
            for (std::int64_t r = 0; r < m; ++r)
                mat[static_cast<size_t>(r * 2 * m + cidx)] = col_[static_cast<size_t>(r)];
        }
        for (std::int64_t r = 0; r < m; ++r) mat[static_cast<size_t>(r * 2 * m + m + r)] = 1.0;

        double max_abs = 0.0, min_piv = std::numeric_limits<double>::infinity();
        for (std::int64_t col = 0; col < m; ++col) {
            std::int64_t prow = col;
            double best = std::fabs(mat[static_cast<size_t>(col * 2 * m + col)]);
            for (std::int64_t r = col + 1; r < m; ++r) {
                const double v = std::fabs(mat[static_cast<size_t>(r * 2 * m + col)]);
                if (v > best) {
                    best = v;
                    prow = r;
                }
            }
            if (best < 1e-13) {
                condition_ = std::numeric_limits<double>::infinity();
                return false;
            }
            min_piv = std::min(min_piv, best);
            max_abs = std::max(max_abs, best);
            if (prow != col)
                for (std::int64_t j = 0; j < 2 * m; ++j)
                    std::swap(mat[static_cast<size_t>(col * 2 * m + j)],
                              mat[static_cast<size_t>(prow * 2 * m + j)]);
            const double piv = mat[static_cast<size_t>(col * 2 * m + col)];
            double* crow = mat.data() + col * 2 * m;
            for (std::int64_t j = 0; j < 2 * m; ++j) crow[j] /= piv;
            for (std::int64_t r = 0; r < m; ++r) {
                if (r == col) continue;
                const double f = mat[static_cast<size_t>(r * 2 * m + col)];
                if (f == 0.0) continue;
                double* row = mat.data() + r * 2 * m;
                for (std::int64_t j = col; j < 2 * m; ++j) row[j] -= f * crow[j];
            }
        }
        condition_ = max_abs / min_piv;
        for (std::int64_t r = 0; r < m; ++r)
            for (std::int64_t j = 0; j < m; ++j)
                binv_[static_cast<size_t>(r * m + j)] = mat[static_cast<size_t>(r * 2 * m + m + j)];

        // xb = Binv * rhs
        for (std::int64_t r = 0; r < m; ++r) {
            const double* row = binv_.data() + r * m_;
            double acc = 0.0;
            for (std::int64_t j = 0; j < m; ++j) acc += row[j] * rhs_[static_cast<size_t>(j)];
            xb_[static_cast<size_t>(r)] = acc < 0.0 && acc > -1e-11 ? 0.0 : acc;
        }
        return true;
    }

    LpSolution classify_packing_infeasible(LpSolution& sol) {
        // The packing program is infeasible, so the covering program is
        // unbounded if it is feasible at all. Probe with a zero objective.
        LpProblem probe = p_;
        std::fill(probe.c.begin(), probe.c.end(), 0.0);
        PackingSimplex inner(probe, tol_);
        LpSolution feas = inner.run();
        sol.status = feas.status == LpStatus::Infeasible ? LpStatus::Infeasible : LpStatus::Unbounded;
        if (sol.status == LpStatus::Infeasible) sol.infeasible_row = feas.infeasible_row;
        return sol;
    }

    // one iterative-refinement pass for the basic values and multipliers;
    // the final residuals have to meet an absolute 1e-8 contract
    void refine_extraction(std::vector<double>& y) {
        std::vector<double> bx(static_cast<size_t>(m_), 0.0);
        for (std::int64_t cidx = 0; cidx < m_; ++cidx) {
            load_column(basis_[static_cast<size_t>(cidx)]);
            const double xc = xb_[static_cast<size_t>(cidx)];
            if (xc == 0.0) continue;
            for (std::int64_t r = 0; r < m_; ++r)
                bx[static_cast<size_t>(r)] += col_[static_cast<size_t>(r)] * xc;
        }
        for (std::int64_t r = 0; r < m_; ++r)
            bx[static_cast<size_t>(r)] = rhs_[static_cast<size_t>(r)] - bx[static_cast<size_t>(r)];
        for (std::int64_t r = 0; r < m_; ++r) {
            const double* row = binv_.data() + r * m_;
            double acc = 0.0;
            for (std::int64_t j = 0; j < m_; ++j) acc += row[j] * bx[static_cast<size_t>(j)];
            xb_[static_cast<size_t>(r)] += acc;
            if (xb_[static_cast<size_t>(r)] < 0.0 && xb_[static_cast<size_t>(r)] > -1e-11)
                xb_[static_cast<size_t>(r)] = 0.0;
        }

        // residual of B^T y = c_B, corrected through Binv^T
        std::vector<double> res(static_cast<size_t>(m_));
        for (std::int64_t cidx = 0; cidx < m_; ++cidx) {
            load_column(basis_[static_cast<size_t>(cidx)]);
            double acc = 0.0;
            for (std::int64_t r = 0; r < m_; ++r)
                acc += col_[static_cast<size_t>(r)] * y[static_cast<size_t>(r)];
            res[static_cast<size_t>(cidx)] = cost_of(basis_[static_cast<size_t>(cidx)]) - acc;
        }
        for (std::int64_t j = 0; j < m_; ++j) {
            double acc = 0.0;
            for (std::int64_t r = 0; r < m_; ++r)
                acc += binv_[static_cast<size_t>(r * m_ + j)] * res[static_cast<size_t>(r)];
            y[static_cast<size_t>(j)] += acc;
        }
    }

    void extract(LpSolution& sol) {
        std::vector<double> y;
        btran(y);
        refine_extraction(y);
        sol.rho.assign(static_cast<size_t>(k_), 0.0);
        for (std::int64_t r = 0; r < m_; ++r) {
            const std::int64_t v = basis_[static_cast<size_t>(r)];
            if (is_structural(v))
                sol.rho[static_cast<size_t>(v)] = std::max(0.0, xb_[static_cast<size_t>(r)]);
        }
        sol.w.assign(static_cast<size_t>(m_), 0.0);
        for (std::int64_t j = 0; j < m_; ++j) {
            const double wj = -y[static_cast<size_t>(j)] * sign_[static_cast<size_t>(j)];
            sol.w[static_cast<size_t>(j)] = wj < 0.0 && wj > -1e-11 ? 0.0 : wj;
        }
        double cw = 0.0, brho = 0.0;
        for (std::int64_t j = 0; j < m_; ++j)
            cw += p_.c[static_cast<size_t>(j)] * sol.w[static_cast<size_t>(j)];
        for (std::int64_t i = 0; i < k_; ++i)
            brho += p_.b[static_cast<size_t>(i)] * sol.rho[static_cast<size_t>(i)];
        sol.primal_value = cw;
        sol.dual_value = brho;
        sol.gap = std::fabs(cw - brho);
        sol.condition_estimate = condition_;
        sol.status = LpStatus::Optimal;
    }

    const LpProblem& p_;
    ToleranceConfig tol_;
    std::int64_t m_ = 0, k_ = 0, n_total_ = 0, max_iter_ = 0;
    int phase_ = 2;
    bool bland_ = false;
    bool refreshed_at_opt_ = false;
    double loosened_tol_ = 0.0;
    double reduced_cost_of_entering_ = 0.0;
    std::int64_t last_entering_ = -1;
    double condition_ = 1.0;
    std::vector<double> sign_, rhs_, xb_, binv_, col_, devex_;
    std::vector<std::int64_t> basis_;
    std::vector<bool> in_basis_;
};

}  // namespace

LpSolution solve(const LpProblem& p, const ToleranceConfig& tol) {
    p.validate();
    PackingSimplex s(p, tol);
    LpSolution sol = s.run();
    if (sol.status == LpStatus::Optimal) {
        // final sanity pass: residuals must meet the certificate contract
        CertificateReport cert = certify(p, sol);
        const double scale = 1.0 + std::fabs(sol.primal_value);
        if (cert.primal_infeasibility > tol.feas_tol || cert.dual_infeasibility > tol.feas_tol ||
            cert.primal_negativity > tol.feas_tol || cert.dual_negativity > tol.feas_tol ||
            cert.gap > tol.gap_tol * scale) {
            sol.status = LpStatus::NumericalError;
        }
    }
    return sol;
}

CertificateReport certify(const LpProblem& p, const LpSolution& s) {
    CertificateReport rep;
    if (s.w.empty() || s.rho.empty()) return rep;
    const std::int64_t k = p.rows, m = p.cols;

    long double gap_cw = 0.0L, gap_brho = 0.0L;
    for (std::int64_t j = 0; j < m; ++j)
        gap_cw += static_cast<long double>(p.c[static_cast<size_t>(j)]) * s.w[static_cast<size_t>(j)];
    for (std::int64_t i = 0; i < k; ++i)
        gap_brho +=
            static_cast<long double>(p.b[static_cast<size_t>(i)]) * s.rho[static_cast<size_t>(i)];
    rep.gap = static_cast<double>(std::fabs(gap_cw - gap_brho));

    for (std::int64_t j = 0; j < m; ++j)
        rep.primal_negativity = std::max(rep.primal_negativity, -s.w[static_cast<size_t>(j)]);
    for (std::int64_t i = 0; i < k; ++i)
        rep.dual_negativity = std::max(rep.dual_negativity, -s.rho[static_cast<size_t>(i)]);
    rep.primal_negativity = std::max(0.0, rep.primal_negativity);
    rep.dual_negativity = std::max(0.0, rep.dual_negativity);

    for (std::int64_t i = 0; i < k; ++i) {
        long double acc = 0.0L;
        const double* row = p.a.data() + i * m;
        for (std::int64_t j = 0; j < m; ++j)
            acc += static_cast<long double>(row[j]) * s.w[static_cast<size_t>(j)];
        const double slack = static_cast<double>(acc) - p.b[static_cast<size_t>(i)];
        rep.primal_infeasibility = std::max(rep.primal_infeasibility, -slack);
        rep.complementarity_dual =
            std::max(rep.complementarity_dual, s.rho[static_cast<size_t>(i)] * slack);
    }
    rep.primal_infeasibility = std::max(0.0, rep.primal_infeasibility);

    for (std::int64_t j = 0; j < m; ++j) {
        long double acc = 0.0L;
        for (std::int64_t i = 0; i < k; ++i)
            acc += static_cast<long double>(p.at(i, j)) * s.rho[static_cast<size_t>(i)];
        const double resid = p.c[static_cast<size_t>(j)] - static_cast<double>(acc);
        rep.dual_infeasibility = std::max(rep.dual_infeasibility, -resid);
        rep.complementarity_primal =
            std::max(rep.complementarity_primal, s.w[static_cast<size_t>(j)] * resid);
    }
    rep.dual_infeasibility = std::max(0.0, rep.dual_infeasibility);
    return rep;
}

}  // namespace fcover
