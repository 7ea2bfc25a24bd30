#include "chns/adjoint.hpp"

#include "chns/operators.hpp"

namespace chns {

void TargetSpec::validate(std::size_t n_states) const {
    if (u_d.size() != n_states || phi_d.size() != n_states)
        throw std::invalid_argument("TargetSpec: target length does not match trajectory");
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("TargetSpec: weights must satisfy alpha,beta >= 0, gamma > 0");
}

TargetSpec targets_from_trajectory(const Trajectory& traj, double alpha, double beta,
                                   double gamma) {
    TargetSpec t;
    t.alpha = alpha;
    t.beta = beta;
    t.gamma = gamma;
    t.u_d.reserve(traj.states().size());
    t.phi_d.reserve(traj.states().size());
    for (const State& s : traj.states()) {
        t.u_d.push_back(s.u);
        t.phi_d.push_back(s.phi);
    }
    return t;
}

namespace {

/// [(p . grad^T)u]_j = sum_i p_i d_j u_i.
VectorField grad_transpose_product(const VectorField& p, const VectorField& u) {
    const VectorField gux = grad(u.x());
    const VectorField guy = grad(u.y());
    ScalarField cx(p.grid_ptr()), cy(p.grid_ptr());
    for (std::size_t n = 0; n < cx.size(); ++n) {
        cx[n] = p.x()[n] * gux.x()[n] + p.y()[n] * guy.x()[n];
        cy[n] = p.x()[n] * gux.y()[n] + p.y()[n] * guy.y()[n];
    }
    return VectorField(std::move(cx), std::move(cy));
}

}  // namespace

std::vector<AdjointState> solve_adjoint(const Trajectory& base, const TargetSpec& targets,
                                        const Kernel& kernel, const Potential& potential,
                                        const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t n_steps = cfg.n_steps();
    if (base.steps() != n_steps)
        throw std::invalid_argument("solve_adjoint: incomplete base trajectory");
    targets.validate(base.states().size());

    const GridPtr& grid = base.state(0).phi.grid_ptr();
    const double dt = cfg.dt;
    const double abar = kernel.a_mean();
    const double S = cfg.stabilization_for(kernel, potential);

    std::vector<AdjointState> out(n_steps + 1);
    out[n_steps] = AdjointState{VectorField(grid), ScalarField(grid), base.state(n_steps).t};

    // Explicit part of the backward step evaluated against one base snapshot.
    auto explicit_terms = [&](std::size_t idx, const AdjointState& prev,
                              ScalarField& rhs_eta_out, VectorField& rhs_p_out) {
        const State& bs = base.state(idx);

        // eta: (a + F''(phi)) Lap eta is split with the same S shift as the
        // forward phi equation; J*Lap eta is computed as Lap(J*eta).
        const ScalarField lap_eta = laplacian(prev.eta);
        ScalarField expl = multiply(potential.d2(bs.phi), lap_eta);
        expl.axpy(-S, lap_eta);
        if (!kernel.translation_invariant()) {
            ScalarField shifted_a = kernel.a();
            for (std::size_t m = 0; m < shifted_a.size(); ++m) shifted_a[m] -= abar;
            expl += multiply(shifted_a, lap_eta);
        }
        expl -= laplacian(convolve(kernel, prev.eta));
        expl += dot(bs.u, grad(prev.eta));

        const VectorField grad_phi = grad(bs.phi);
        expl -= convolve(kernel, dot(prev.p, grad_phi));
        expl += dot(grad_convolve(kernel, bs.phi), prev.p);
        if (!kernel.translation_invariant())
            expl -= multiply(dot(kernel.grad_a(), prev.p), bs.phi);

        ScalarField source_phi = bs.phi;
        source_phi -= targets.phi_d[idx];
        expl.axpy(targets.beta, source_phi);
        rhs_eta_out = std::move(expl);

        // p: transpose convection terms, the eta grad(phi) coupling and the
        // velocity tracking source.
        VectorField rhs_p = grad_transpose_product(prev.p, bs.u);
        rhs_p *= -1.0;
        const VectorField gpx = grad(prev.p.x());
        const VectorField gpy = grad(prev.p.y());
        rhs_p += VectorField(dot(bs.u, gpx), dot(bs.u, gpy));  // (u.grad)p
        rhs_p -= multiply(grad_phi, prev.eta);
        VectorField source_u = bs.u;
        source_u -= targets.u_d[idx];
        rhs_p.axpy(targets.alpha, source_u);
        rhs_p_out = std::move(rhs_p);
    };

    for (std::size_t n = n_steps; n-- > 0;) {
        const AdjointState& prev = out[n + 1];

        ScalarField rhs_eta;
        VectorField rhs_p;
        explicit_terms(n, prev, rhs_eta, rhs_p);

        ScalarField eta_new = prev.eta;
        eta_new.axpy(dt, dealias(rhs_eta));
        eta_new = helmholtz_solve(eta_new, dt * (abar + S));

        VectorField p_new = prev.p;
        p_new.axpy(dt, leray_project(dealias(rhs_p)));
        p_new = leray_project(helmholtz_solve(p_new, dt * cfg.nu));

        if (!p_new.finite() || !eta_new.finite())
            throw std::runtime_error(
                "solve_adjoint: blow-up in backward sweep at step " + std::to_string(n) +
                " (parabolicity violated? check validate_assumptions)");
        out[n] = AdjointState{std::move(p_new), std::move(eta_new), base.state(n).t};
    }
    return out;
}

}  // namespace chns
