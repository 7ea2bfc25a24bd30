#include "chns/second_order.hpp"

#include "chns/operators.hpp"

namespace chns {

FeasibleDifference feasible_difference(const Trajectory& base, const Control& w,
                                       const SolverConfig& cfg, const Kernel& kernel,
                                       const Potential& potential) {
    if (w.steps() != base.steps())
        throw std::invalid_argument("feasible_difference: control length mismatch");
    const Trajectory perturbed = solve_forward(base.state(0), w, cfg, kernel, potential);

    FeasibleDifference diff;
    diff.du.reserve(base.states().size());
    diff.dphi.reserve(base.states().size());
    for (std::size_t n = 0; n < base.states().size(); ++n) {
        diff.du.push_back(perturbed.state(n).u - base.state(n).u);
        diff.dphi.push_back(perturbed.state(n).phi - base.state(n).phi);
    }
    diff.delta_control = w - base.control();
    return diff;
}

double quadratic_form(const FeasibleDifference& diff, const std::vector<AdjointState>& adjoint,
                      const Trajectory& base, const Kernel& kernel, const Potential& potential,
                      const TargetSpec& targets) {
    const std::size_t n_steps = base.steps();
    if (diff.du.size() != n_steps + 1 || diff.dphi.size() != n_steps + 1 ||
        diff.delta_control.steps() != n_steps || adjoint.size() != n_steps + 1)
        throw std::invalid_argument("quadratic_form: sequence length mismatch");

    const double dt = diff.delta_control.dt();
    double q = 0.0;
    for (std::size_t n = 0; n < n_steps; ++n) {
        const VectorField& du = diff.du[n];
        const ScalarField& dphi = diff.dphi[n];
        const VectorField& dU = diff.delta_control[n];
        // Adjoint slot n+1: the backward sweep is the exact transpose of the
        // linearized stepper with its multiplier one level behind the state
        // index, and this pairing is what makes Q equal 2 [J(W) - J(U*)] to
        // roundoff rather than to O(dt)/O(s).
        const AdjointState& adj = adjoint[n + 1];

        double term = targets.alpha * inner(du, du) + targets.beta * inner(dphi, dphi) +
                      targets.gamma * inner(dU, dU);

        // Exact Taylor remainder of F' at the base state.
        const ScalarField& phi_star = base.state(n).phi;
        ScalarField remainder(dphi.grid_ptr());
        for (std::size_t m = 0; m < remainder.size(); ++m)
            remainder[m] = potential.d1(phi_star[m] + dphi[m]) - potential.d1(phi_star[m]) -
                           potential.d2(phi_star[m]) * dphi[m];
        term += 2.0 * inner(remainder, laplacian(adj.eta));

        const VectorField grad_dphi = grad(dphi);
        const VectorField gdux = grad(du.x());
        const VectorField gduy = grad(du.y());
        VectorField group(dot(du, gdux), dot(du, gduy));  // (du.grad)du
        group += multiply(grad_dphi, convolve(kernel, dphi));
        if (!kernel.translation_invariant()) {
            ScalarField half_dphi2(dphi.grid_ptr());
            for (std::size_t m = 0; m < half_dphi2.size(); ++m)
                half_dphi2[m] = 0.5 * dphi[m] * dphi[m];
            group += multiply(kernel.grad_a(), half_dphi2);
        }
        group -= dU;
        term -= 2.0 * inner(group, adj.p);

        term -= 2.0 * inner(dot(du, grad_dphi), adj.eta);

        // First-order part; zero at an exactly stationary base control.
        term += 2.0 * targets.gamma * inner(dU, base.control()[n]);

        q += dt * term;
    }
    return q;
}

double curvature_fd(const Control& u_star, const Control& direction, double s, const State& init,
                    const TargetSpec& targets, const SolverConfig& cfg, const Kernel& kernel,
                    const Potential& potential) {
    if (direction.steps() != u_star.steps())
        throw std::invalid_argument("curvature_fd: direction length mismatch");
    if (!(s > 0.0)) throw std::invalid_argument("curvature_fd: scale must be > 0");

    auto evaluate = [&](const Control& c) {
        const Trajectory traj = solve_forward(init, c, cfg, kernel, potential);
        return cost(traj, c, targets).total;
    };
    Control plus = u_star;
    plus.axpy(s, direction);
    Control minus = u_star;
    minus.axpy(-s, direction);
    const double j_plus = evaluate(plus);
    const double j_minus = evaluate(minus);
    const double j_star = evaluate(u_star);
    return (j_plus - 2.0 * j_star + j_minus) / (s * s);
}

}  // namespace chns
