#pragma once

#include "chns/forward.hpp"

namespace chns {

struct AdjointState {
    VectorField p;
    ScalarField eta;
    double t = 0.0;
};

/// Tracking targets and cost weights. Target sequences are indexed like
/// trajectory snapshots (N+1 entries); the cost and the adjoint sources use
/// the left-endpoint slices 0..N-1.
struct TargetSpec {
    std::vector<VectorField> u_d;
    std::vector<ScalarField> phi_d;
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;

    void validate(std::size_t n_states) const;
};

/// Targets equal to the given trajectory (zero tracking mismatch on it).
TargetSpec targets_from_trajectory(const Trajectory& traj, double alpha = 1.0, double beta = 1.0,
                                   double gamma = 1.0);

/// Backward integration of the adjoint system from zero terminal data:
///   -p_t - nu Lap p + (p . grad^T)u - (u . grad)p + eta grad phi + grad q
///        = alpha (u - u_d),
///   -eta_t + J*(p . grad phi) - (grad J * phi) . p + (grad a . p) phi
///        - u . grad eta - a Lap eta + J*Lap eta - F''(phi) Lap eta
///        = beta (phi - phi_d),
/// with div p = 0 and p(T) = eta(T) = 0. [(p . grad^T)u]_j = sum_i p_i d_j u_i.
/// The convection/coupling signs in the p equation are the transpose of the
/// linearized operator, which is what the gradient and duality identities
/// require; q is eliminated by the Leray projection.
///
/// Discretization mirrors the forward IMEX splitting in reversed time:
/// nu Lap p and (mean(a)+S) Lap eta implicit, everything else explicit at
/// the previous backward level, base snapshots frozen at beginning-of-step
/// values.
///
/// The returned slice n approximates (p, eta)(t_n). The sweep is also,
/// mode for mode, the exact transpose of solve_tangent with its multiplier
/// running one level behind: pairing control slice n against slice n+1
/// reproduces discrete directional cost derivatives to roundoff, while the
/// natural same-index pairing (the reduced gradient gamma U_n + p_n) carries
/// the O(dt) optimize-then-discretize gap that the finite-difference checks
/// certify.
std::vector<AdjointState> solve_adjoint(const Trajectory& base, const TargetSpec& targets,
                                        const Kernel& kernel, const Potential& potential,
                                        const SolverConfig& cfg);

}  // namespace chns
