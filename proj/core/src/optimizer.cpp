#include "chns/optimizer.hpp"

#include <cmath>

namespace chns {

CostReport cost(const Trajectory& traj, const Control& control, const TargetSpec& targets) {
    const std::size_t n_steps = traj.steps();
    if (control.steps() != n_steps) throw std::invalid_argument("cost: control length mismatch");
    targets.validate(traj.states().size());

    CostReport rep;
    rep.tracking_u_series.reserve(n_steps);
    rep.tracking_phi_series.reserve(n_steps);
    rep.control_series.reserve(n_steps);
    const double dt = control.dt();
    for (std::size_t n = 0; n < n_steps; ++n) {
        VectorField du = traj.state(n).u;
        du -= targets.u_d[n];
        ScalarField dphi = traj.state(n).phi;
        dphi -= targets.phi_d[n];
        const double ju = targets.alpha * inner(du, du);
        const double jphi = targets.beta * inner(dphi, dphi);
        const double jc = targets.gamma * inner(control[n], control[n]);
        rep.tracking_u_series.push_back(ju);
        rep.tracking_phi_series.push_back(jphi);
        rep.control_series.push_back(jc);
        rep.tracking_u += 0.5 * dt * ju;
        rep.tracking_phi += 0.5 * dt * jphi;
        rep.control_energy += 0.5 * dt * jc;
    }
    rep.total = rep.tracking_u + rep.tracking_phi + rep.control_energy;
    return rep;
}

Control reduced_gradient(const Control& control, const std::vector<AdjointState>& adjoint,
                         double gamma) {
    if (adjoint.size() != control.steps() + 1)
        throw std::invalid_argument("reduced_gradient: adjoint length mismatch");
    Control g = control;
    g *= gamma;
    for (std::size_t n = 0; n < g.steps(); ++n) g[n] += adjoint[n].p;
    return g;
}

double optimality_residual(const Control& control, const std::vector<AdjointState>& adjoint,
                           double gamma) {
    const Control g = reduced_gradient(control, adjoint, gamma);
    return norm_l2t(g) / std::max(1.0, norm_l2t(control));
}

double hamiltonian_gap(const VectorField& u_star_slice, const VectorField& p_slice,
                       const VectorField& candidate) {
    require_same_grid(u_star_slice.grid(), p_slice.grid(), "hamiltonian_gap");
    require_same_grid(u_star_slice.grid(), candidate.grid(), "hamiltonian_gap");
    const double h_candidate = 0.5 * inner(candidate, candidate) + inner(p_slice, candidate);
    const double h_star = 0.5 * inner(u_star_slice, u_star_slice) + inner(p_slice, u_star_slice);
    return h_candidate - h_star;
}

OptimReport optimize(const Control& initial_control, const State& init, const TargetSpec& targets,
                     const SolverConfig& cfg, const Kernel& kernel, const Potential& potential,
                     const OptimizerOptions& opts) {
    OptimReport rep;
    rep.control = initial_control;
    rep.trajectory = solve_forward(init, rep.control, cfg, kernel, potential);
    rep.adjoint = solve_adjoint(rep.trajectory, targets, kernel, potential, cfg);
    double j_current = cost(rep.trajectory, rep.control, targets).total;
    Control gradient = reduced_gradient(rep.control, rep.adjoint, targets.gamma);
    double g_norm = norm_l2t(gradient);
    const double g0_norm = g_norm;

    rep.history.push_back(IterationRow{0, j_current, g_norm, 0.0, 0});
    double step_size = opts.initial_step;

    for (std::size_t iter = 1; iter <= opts.max_iters; ++iter) {
        if (g_norm / std::max(1.0, g0_norm) <= opts.grad_tol) {
            rep.converged = true;
            break;
        }
        // d = -g; Armijo needs J(U + s d) <= J(U) - c1 s ||g||^2.
        const double gg = g_norm * g_norm;
        double s = step_size;
        std::size_t backtracks = 0;
        bool accepted = false;
        Control candidate = rep.control;
        Trajectory candidate_traj;
        double j_candidate = 0.0;
        while (backtracks <= opts.max_backtracks) {
            candidate = rep.control;
            candidate.axpy(-s, gradient);
            bool blew_up = false;
            try {
                candidate_traj = solve_forward(init, candidate, cfg, kernel, potential);
                j_candidate = cost(candidate_traj, candidate, targets).total;
            } catch (const BlowupError&) {
                blew_up = true;
            }
            if (!blew_up && j_candidate <= j_current - opts.armijo_c1 * s * gg) {
                accepted = true;
                break;
            }
            s *= opts.backtrack_rho;
            ++backtracks;
        }
        if (!accepted) {
            rep.message = "line search failed after " + std::to_string(opts.max_backtracks) +
                          " backtracks at iteration " + std::to_string(iter);
            break;
        }

        rep.control = std::move(candidate);
        rep.trajectory = std::move(candidate_traj);
        j_current = j_candidate;
        rep.adjoint = solve_adjoint(rep.trajectory, targets, kernel, potential, cfg);
        gradient = reduced_gradient(rep.control, rep.adjoint, targets.gamma);
        g_norm = norm_l2t(gradient);
        rep.history.push_back(IterationRow{iter, j_current, g_norm, s, backtracks});
        // Reuse the accepted scale, probing one doubling next iteration.
        step_size = 2.0 * s;
    }
    if (!rep.converged && g_norm / std::max(1.0, g0_norm) <= opts.grad_tol) rep.converged = true;

    rep.final_cost = j_current;
    rep.optimality = optimality_residual(rep.control, rep.adjoint, targets.gamma);
    if (rep.message.empty())
        rep.message = rep.converged ? "converged" : "iteration budget exhausted";
    return rep;
}

}  // namespace chns
