#pragma once

#include <string>

#include "chns/adjoint.hpp"

namespace chns {

struct CostReport {
    double total = 0.0;
    double tracking_u = 0.0;
    double tracking_phi = 0.0;
    double control_energy = 0.0;
    /// per-slice integrands (already weighted, without the dt factor)
    std::vector<double> tracking_u_series;
    std::vector<double> tracking_phi_series;
    std::vector<double> control_series;
};

/// J = 1/2 sum_n dt [ alpha ||u_n - u_d,n||^2 + beta ||phi_n - phi_d,n||^2
///                    + gamma ||U_n||^2 ], left-endpoint rule (n = 0..N-1).
CostReport cost(const Trajectory& traj, const Control& control, const TargetSpec& targets);

/// Reduced gradient g_n = gamma U_n + p_n (divergence-free by construction).
Control reduced_gradient(const Control& control, const std::vector<AdjointState>& adjoint,
                         double gamma);

/// ||gamma U + p||_{L2(0,T)} / max(1, ||U||_{L2(0,T)}).
double optimality_residual(const Control& control, const std::vector<AdjointState>& adjoint,
                           double gamma);

/// Pointwise-in-time Hamiltonian slice difference
///   [1/2 ||W||^2 + (p,W)] - [1/2 ||U*||^2 + (p,U*)];
/// equals 1/2 ||W + p||^2 when U* = -p, hence is nonnegative there.
double hamiltonian_gap(const VectorField& u_star_slice, const VectorField& p_slice,
                       const VectorField& candidate);

struct OptimizerOptions {
    std::size_t max_iters = 50;
    double grad_tol = 1e-3;  ///< stop at ||g|| / max(1, ||g0||) <= grad_tol
    double armijo_c1 = 1e-4;
    double backtrack_rho = 0.5;
    std::size_t max_backtracks = 40;
    double initial_step = 1.0;
};

struct IterationRow {
    std::size_t iter = 0;
    double cost = 0.0;
    double grad_norm = 0.0;
    double step = 0.0;
    std::size_t backtracks = 0;
};

struct OptimReport {
    std::vector<IterationRow> history;
    Control control;
    Trajectory trajectory;                ///< forward solve at the final control
    std::vector<AdjointState> adjoint;    ///< adjoint at the final control
    double final_cost = 0.0;
    double optimality = 0.0;              ///< ||gamma U + p|| / max(1, ||U||)
    bool converged = false;
    std::string message;
};

/// Steepest descent with Armijo backtracking on the reduced cost. Each
/// iteration runs one forward solve, one adjoint solve and a line search;
/// accepted steps satisfy J(U + s d) <= J(U) + c1 s (g, d) with d = -g.
OptimReport optimize(const Control& initial_control, const State& init, const TargetSpec& targets,
                     const SolverConfig& cfg, const Kernel& kernel, const Potential& potential,
                     const OptimizerOptions& opts = {});

}  // namespace chns
