#pragma once

#include "chns/forward.hpp"

namespace chns {

struct TangentState {
    VectorField w;
    ScalarField psi;
    double t = 0.0;
};

/// Integrate the linearized system around a stored trajectory with zero
/// initial data and control perturbation dU:
///   w_t - nu Lap w + (w.grad)u + (u.grad)w
///       = P[-(grad a) psi phi - (J*psi) grad phi - (J*phi) grad psi + dU],
///   psi_t + w.grad phi + u.grad psi = Lap(a psi - J*psi + F''(phi) psi).
/// The scheme is the exact derivative of the forward step: base snapshots are
/// frozen at beginning-of-step values and every implicit/explicit split and
/// dealias placement mirrors solve_forward, so superposition holds to
/// machine precision.
std::vector<TangentState> solve_tangent(const Trajectory& base, const Control& delta_u,
                                        const Kernel& kernel, const Potential& potential,
                                        const SolverConfig& cfg);

}  // namespace chns
