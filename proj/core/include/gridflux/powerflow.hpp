#pragma once

#include <stdexcept>
#include <vector>

#include "gridflux/grid.hpp"

namespace gridflux::pf {

/// Per-bus voltage state: magnitudes (per-unit) and angles (radians).
struct VoltageSolution {
    std::vector<double> vm;
    std::vector<double> va;
};

/// Active/reactive power-balance residuals, per-unit, one entry per bus.
struct MismatchVector {
    std::vector<double> dp;
    std::vector<double> dq;

    /// Largest absolute residual over PQ buses.
    double max_pq(const grid::Grid& g) const;
};

struct SolverOptions {
    double tol = 1e-8;   // max absolute PQ mismatch, per-unit
    int max_iter = 30;
    bool flat_start = true;
};

struct SolveStats {
    int iterations = 0;          // Newton steps / Gauss-Seidel sweeps taken
    double final_mismatch = 0.0;
};

/// Raised when the iteration cap is hit before the tolerance.
class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(double mismatch, int iterations);
    double final_mismatch;
    int iterations;
};

/// Evaluates dp_i = P_i - sum_k |V_i||V_k| (G_ik cos t_ik + B_ik sin t_ik)
/// and dq_i = Q_i - sum_k |V_i||V_k| (G_ik sin t_ik - B_ik cos t_ik) at the
/// given state, slack rows included. Total on finite inputs.
MismatchVector power_mismatch(const grid::Grid& grid, const grid::AdmittanceMatrix& y,
                              const VoltageSolution& sol);

/// Sum of squared mismatches over PQ buses only. The slack absorbs network
/// losses, so its scheduled injection is excluded by construction.
double physics_loss(const grid::Grid& grid, const grid::AdmittanceMatrix& y,
                    const VoltageSolution& sol);

/// Newton-Raphson AC solve with the analytic polar Jacobian over the 2(N-1)
/// PQ unknowns. Returns a state whose max PQ mismatch is below opts.tol;
/// throws DivergenceError otherwise.
VoltageSolution solve_ac(const grid::Grid& grid, const SolverOptions& opts = {},
                         SolveStats* stats = nullptr);

/// Newton solve warm-started from `initial` (opts.flat_start ignored).
VoltageSolution solve_ac_from(const grid::Grid& grid, const VoltageSolution& initial,
                              const SolverOptions& opts = {}, SolveStats* stats = nullptr);

/// Gauss-Seidel fixed-point solve; the independent cross-check for Newton.
VoltageSolution solve_gauss_seidel(const grid::Grid& grid, double tol = 1e-9,
                                   int max_sweeps = 200000, SolveStats* stats = nullptr);

/// Linearized DC power flow: vm = 1 everywhere, angles from B' theta = P with
/// B' built from the lossless 1/x per line. Slack angle pinned to va_ref.
VoltageSolution solve_dc(const grid::Grid& grid);

}  // namespace gridflux::pf
