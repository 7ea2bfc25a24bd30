#include "chns/forward.hpp"

#include <cmath>
#include <string>

#include "chns/operators.hpp"

namespace chns {

std::size_t SolverConfig::n_steps() const {
    return static_cast<std::size_t>(std::llround(t_final / dt));
}

void SolverConfig::validate() const {
    if (!(nu > 0.0)) throw std::invalid_argument("SolverConfig: nu must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be > 0");
    if (!(t_final > 0.0)) throw std::invalid_argument("SolverConfig: t_final must be > 0");
    const double n = t_final / dt;
    if (std::abs(n - std::llround(n)) > 1e-12 * std::max(1.0, n))
        throw std::invalid_argument("SolverConfig: dt must divide t_final");
    if (stabilization && *stabilization < 0.0)
        throw std::invalid_argument("SolverConfig: stabilization must be >= 0");
}

double SolverConfig::stabilization_for(const Kernel& kernel, const Potential& potential) const {
    if (stabilization) return *stabilization;
    return std::max(0.0, potential.max_d2() - kernel.a_mean());
}

BlowupError::BlowupError(std::size_t step_index, std::shared_ptr<Trajectory> partial)
    : std::runtime_error("solution blew up at step " + std::to_string(step_index)),
      step_index_(step_index),
      partial_(std::move(partial)) {}

namespace {

/// (u . grad) v, dealiased.
VectorField convective(const VectorField& u, const VectorField& v) {
    const VectorField gx = grad(v.x());
    const VectorField gy = grad(v.y());
    return dealias(VectorField(dot(u, gx), dot(u, gy)));
}

}  // namespace

State step(const State& state, const VectorField& control_slice, const SolverConfig& cfg,
           const Kernel& kernel, const Potential& potential) {
    const double dt = cfg.dt;
    const double abar = kernel.a_mean();
    const double S = cfg.stabilization_for(kernel, potential);

    // phi update: explicit chemistry under the Laplacian, conservative
    // transport, implicit (abar+S) Lap on the new value.
    ScalarField expl = potential.d1(state.phi);
    expl.axpy(-S, state.phi);
    if (!kernel.translation_invariant()) {
        ScalarField shifted_a = kernel.a();
        for (std::size_t n = 0; n < shifted_a.size(); ++n) shifted_a[n] -= abar;
        expl += multiply(shifted_a, state.phi);
    }
    expl -= convolve(kernel, state.phi);
    ScalarField rhs_phi = laplacian(dealias(expl));
    rhs_phi -= div(dealias(multiply(state.u, state.phi)));

    ScalarField phi_new = state.phi;
    phi_new.axpy(dt, rhs_phi);
    phi_new = helmholtz_solve(phi_new, dt * (abar + S));

    // velocity update: explicit convection, capillary force and sources,
    // implicit nu Lap, Leray projection enforcing div u = 0.
    VectorField rhs_u = korteweg_force(state.phi, kernel, potential);
    rhs_u -= convective(state.u, state.u);
    rhs_u += control_slice;
    VectorField u_new = state.u;
    u_new.axpy(dt, leray_project(rhs_u));
    u_new = leray_project(helmholtz_solve(u_new, dt * cfg.nu));

    return State{std::move(u_new), std::move(phi_new), state.t + dt};
}

DiagnosticsRow diagnostics_row(const State& state, const Kernel& kernel,
                               const Potential& potential) {
    DiagnosticsRow row;
    row.t = state.t;
    row.energy = energy(state.u, state.phi, kernel, potential);
    row.mass = mean(state.phi);
    const VectorField gux = grad(state.u.x());
    const VectorField guy = grad(state.u.y());
    row.enstrophy = inner(gux, gux) + inner(guy, guy);
    const VectorField gmu = grad(chemical_potential(state.phi, kernel, potential));
    row.grad_mu_sq = inner(gmu, gmu);
    row.max_speed = max_abs(state.u);
    return row;
}

Trajectory solve_forward(const State& init, const Control& control, const SolverConfig& cfg,
                         const Kernel& kernel, const Potential& potential) {
    cfg.validate();
    const std::size_t n_steps = cfg.n_steps();
    if (control.steps() != n_steps)
        throw std::invalid_argument("solve_forward: control length does not match t_final/dt");
    if (cfg.forcing && cfg.forcing->steps() != n_steps)
        throw std::invalid_argument("solve_forward: forcing length does not match t_final/dt");
    if (!init.u.finite() || !init.phi.finite())
        throw std::invalid_argument("solve_forward: non-finite initial state");
    require_same_grid(init.u.grid(), init.phi.grid(), "solve_forward");
    require_same_grid(init.phi.grid(), kernel.grid(), "solve_forward");
    for (std::size_t n = 0; n < n_steps; ++n)
        require_same_grid(control[n].grid(), init.phi.grid(), "solve_forward control");

    std::vector<State> states;
    states.reserve(n_steps + 1);
    std::vector<DiagnosticsRow> diag;
    diag.reserve(n_steps + 1);
    states.push_back(init);
    states.front().t = 0.0;
    diag.push_back(diagnostics_row(states.front(), kernel, potential));

    for (std::size_t n = 0; n < n_steps; ++n) {
        VectorField slice = control[n];
        if (cfg.forcing) slice += (*cfg.forcing)[n];
        // Grids were validated above, so an invalid_argument out of the
        // operator layer here means an intermediate product overflowed.
        bool finite = true;
        State next;
        DiagnosticsRow row;
        try {
            next = step(states.back(), slice, cfg, kernel, potential);
            finite = next.u.finite() && next.phi.finite();
            if (finite) {
                row = diagnostics_row(next, kernel, potential);
                finite = std::isfinite(row.energy) && std::isfinite(row.grad_mu_sq) &&
                         std::isfinite(row.enstrophy);
            }
        } catch (const std::invalid_argument&) {
            finite = false;
        }
        if (!finite) {
            auto partial = std::make_shared<Trajectory>(std::move(states), control, std::move(diag));
            throw BlowupError(n, std::move(partial));
        }
        diag.push_back(row);
        states.push_back(std::move(next));
    }
    return Trajectory(std::move(states), control, std::move(diag));
}

VectorField taylor_green(const GridPtr& grid, double amplitude) {
    const Grid& g = *grid;
    VectorField v(grid);
    for (std::size_t j = 0; j < g.ny(); ++j) {
        const double y = g.y(j);
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const double x = g.x(i);
            v.x().at(i, j) = amplitude * std::sin(x) * std::cos(y);
            v.y().at(i, j) = -amplitude * std::cos(x) * std::sin(y);
        }
    }
    return v;
}

}  // namespace chns
