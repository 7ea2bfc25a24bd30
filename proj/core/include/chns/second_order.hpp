#pragma once

#include "chns/optimizer.hpp"

namespace chns {

/// Slice-wise difference of two feasible triplets sharing initial data:
/// (du, dphi)(0) = 0 and every du slice is divergence-free.
struct FeasibleDifference {
    std::vector<VectorField> du;    ///< N+1 slices
    std::vector<ScalarField> dphi;  ///< N+1 slices
    Control delta_control;          ///< N slices, W - U*
};

/// Solve forward with control W from the base trajectory's initial data and
/// subtract snapshots slice-wise.
FeasibleDifference feasible_difference(const Trajectory& base, const Control& w,
                                       const SolverConfig& cfg, const Kernel& kernel,
                                       const Potential& potential);

/// Second-order quadratic form evaluated on a feasible difference at the base
/// triplet with adjoint (p, eta):
///   Q = sum_n dt [ alpha ||du||^2 + beta ||dphi||^2 + gamma ||dU||^2
///                  + 2 (R_n, Lap eta_n)
///                  - 2 ((du.grad)du + (grad a/2) dphi^2 + (J*dphi) grad dphi
///                       - dU, p_n)
///                  - 2 (du.grad dphi, eta_n)
///                  + 2 gamma (dU_n, U*_n) ],
/// with R_n = F'(phi*_n + dphi_n) - F'(phi*_n) - F''(phi*_n) dphi_n the exact
/// polynomial Taylor remainder. The trailing first-order term makes
/// Q = 2 [J(W) - J(U*)] an identity under exact duality; it vanishes at an
/// exactly stationary base control, where Q reduces to the curvature form.
double quadratic_form(const FeasibleDifference& diff, const std::vector<AdjointState>& adjoint,
                      const Trajectory& base, const Kernel& kernel, const Potential& potential,
                      const TargetSpec& targets);

/// Second central difference [J(U*+sV) - 2 J(U*) + J(U*-sV)] / s^2.
double curvature_fd(const Control& u_star, const Control& direction, double s, const State& init,
                    const TargetSpec& targets, const SolverConfig& cfg, const Kernel& kernel,
                    const Potential& potential);

}  // namespace chns
