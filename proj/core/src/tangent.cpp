#include "chns/tangent.hpp"

#include "chns/operators.hpp"

namespace chns {

std::vector<TangentState> solve_tangent(const Trajectory& base, const Control& delta_u,
                                        const Kernel& kernel, const Potential& potential,
                                        const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t n_steps = cfg.n_steps();
    if (base.steps() != n_steps)
        throw std::invalid_argument("solve_tangent: base trajectory length mismatch");
    if (delta_u.steps() != n_steps)
        throw std::invalid_argument("solve_tangent: control perturbation length mismatch");

    const GridPtr& grid = base.state(0).phi.grid_ptr();
    const double dt = cfg.dt;
    const double abar = kernel.a_mean();
    const double S = cfg.stabilization_for(kernel, potential);

    std::vector<TangentState> out;
    out.reserve(n_steps + 1);
    out.push_back(TangentState{VectorField(grid), ScalarField(grid), 0.0});

    for (std::size_t n = 0; n < n_steps; ++n) {
        const State& bs = base.state(n);
        const TangentState& ts = out.back();

        // psi update: derivative of the phi step. F'' (phi) psi replaces F',
        // transport splits into div(u psi) + div(w phi).
        ScalarField expl = multiply(potential.d2(bs.phi), ts.psi);
        expl.axpy(-S, ts.psi);
        if (!kernel.translation_invariant()) {
            ScalarField shifted_a = kernel.a();
            for (std::size_t m = 0; m < shifted_a.size(); ++m) shifted_a[m] -= abar;
            expl += multiply(shifted_a, ts.psi);
        }
        expl -= convolve(kernel, ts.psi);
        ScalarField rhs_psi = laplacian(dealias(expl));
        rhs_psi -= div(dealias(multiply(bs.u, ts.psi)));
        rhs_psi -= div(dealias(multiply(ts.w, bs.phi)));

        ScalarField psi_new = ts.psi;
        psi_new.axpy(dt, rhs_psi);
        psi_new = helmholtz_solve(psi_new, dt * (abar + S));

        // w update: derivative of the velocity step.
        const VectorField grad_phi = grad(bs.phi);
        const VectorField grad_psi = grad(ts.psi);
        VectorField rhs_w = multiply(grad_phi, convolve(kernel, ts.psi));
        rhs_w += multiply(grad_psi, convolve(kernel, bs.phi));
        if (!kernel.translation_invariant())
            rhs_w += multiply(kernel.grad_a(), multiply(ts.psi, bs.phi));
        rhs_w *= -1.0;
        const VectorField gux = grad(bs.u.x());
        const VectorField guy = grad(bs.u.y());
        const VectorField gwx = grad(ts.w.x());
        const VectorField gwy = grad(ts.w.y());
        rhs_w -= VectorField(dot(ts.w, gux), dot(ts.w, guy));  // (w.grad)u
        rhs_w -= VectorField(dot(bs.u, gwx), dot(bs.u, gwy));  // (u.grad)w
        rhs_w = dealias(rhs_w);
        rhs_w += delta_u[n];

        VectorField w_new = ts.w;
        w_new.axpy(dt, leray_project(rhs_w));
        w_new = leray_project(helmholtz_solve(w_new, dt * cfg.nu));

        if (!w_new.finite() || !psi_new.finite())
            throw BlowupError(n, nullptr);
        out.push_back(TangentState{std::move(w_new), std::move(psi_new), bs.t + dt});
    }
    return out;
}

}  // namespace chns
