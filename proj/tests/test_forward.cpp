#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chns/forward.hpp"
#include "chns/operators.hpp"
#include "test_support.hpp"

using namespace chns;

namespace {

struct Setup {
    GridPtr grid;
    Kernel kernel;
    Potential potential;
    SolverConfig cfg;
};

Setup make_setup(std::size_t n, double dt, double t_final, double nu = 0.1) {
    auto grid = make_grid(n, n);
    Setup s{grid, build_kernel(GaussianKernelSpec{0.5, 5.0}, grid), Potential::double_well(), {}};
    s.cfg.nu = nu;
    s.cfg.dt = dt;
    s.cfg.t_final = t_final;
    return s;
}

State smooth_state(const Setup& s, std::uint64_t seed, double u_amp = 0.5, double phi_amp = 0.4) {
    std::mt19937_64 rng(seed);
    ScalarField phi = oracle::smooth_random_field(s.grid, rng, 2, phi_amp);
    VectorField u(oracle::smooth_random_field(s.grid, rng, 2, u_amp),
                  oracle::smooth_random_field(s.grid, rng, 2, u_amp));
    return State{leray_project(dealias(u)), dealias(phi), 0.0};
}

}  // namespace

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 0.1;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.n_steps() == 100);
    cfg.dt = 3e-3;  // does not divide 0.1
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.dt = 1e-3;
    cfg.nu = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("constant state is a fixed point") {
    Setup s = make_setup(16, 1e-3, 0.01);
    const State init{VectorField(s.grid), ScalarField(s.grid, 0.3), 0.0};
    const Control zero(s.grid, s.cfg.n_steps(), s.cfg.dt);
    const Trajectory traj = solve_forward(init, zero, s.cfg, s.kernel, s.potential);
    for (const State& st : traj.states()) {
        CHECK(oracle::max_abs_diff(st.phi, init.phi) < 1e-12);
        CHECK(max_abs(st.u) < 1e-12);
    }
}

TEST_CASE("pure fluid Taylor-Green decays at rate 2 nu") {
    Setup s = make_setup(32, 1e-3, 0.1, 0.1);
    const State init{taylor_green(s.grid), ScalarField(s.grid, 1.0), 0.0};
    const Control zero(s.grid, s.cfg.n_steps(), s.cfg.dt);
    const Trajectory traj = solve_forward(init, zero, s.cfg, s.kernel, s.potential);
    const double n0 = norm_l2(traj.state(0).u);
    const double nT = norm_l2(traj.states().back().u);
    const double rate = -std::log(nT / n0) / s.cfg.t_final;
    CHECK(rate == doctest::Approx(2.0 * s.cfg.nu).epsilon(0.01));
    // phi stays exactly in the pure phase
    CHECK(oracle::max_abs_diff(traj.states().back().phi, init.phi) < 1e-10);
}

TEST_CASE("one step matches the dense DFT implementation of the same scheme") {
    Setup s = make_setup(16, 1e-3, 1e-3);
    std::mt19937_64 rng(21);
    const State init = smooth_state(s, 21);
    VectorField control_slice = leray_project(dealias(
        VectorField(oracle::smooth_random_field(s.grid, rng, 2, 0.3),
                    oracle::smooth_random_field(s.grid, rng, 2, 0.3))));

    const State fast = step(init, control_slice, s.cfg, s.kernel, s.potential);

    // Independent dense-arithmetic realization of the identical update.
    namespace dn = oracle::dense;
    const double dt = s.cfg.dt;
    const double abar = s.kernel.a_mean();
    const double S = s.cfg.stabilization_for(s.kernel, s.potential);

    ScalarField expl = s.potential.d1(init.phi);
    expl.axpy(-S, init.phi);
    expl -= oracle::convolve_direct(s.kernel.samples(), init.phi);
    ScalarField rhs_phi = dn::laplace(dn::truncate23(expl));
    rhs_phi -= dn::divergence(dn::truncate23(multiply(init.u, init.phi)));
    ScalarField phi_ref = init.phi;
    phi_ref.axpy(dt, rhs_phi);
    phi_ref = dn::helmholtz(phi_ref, dt * (abar + S));

    VectorField force =
        multiply(dn::gradient(init.phi), oracle::convolve_direct(s.kernel.samples(), init.phi));
    force *= -1.0;
    force = dn::leray(dn::truncate23(force));
    const VectorField gx = dn::gradient(init.u.x());
    const VectorField gy = dn::gradient(init.u.y());
    VectorField rhs_u = force;
    rhs_u -= dn::truncate23(VectorField(dot(init.u, gx), dot(init.u, gy)));
    rhs_u += control_slice;
    VectorField u_ref = init.u;
    u_ref.axpy(dt, dn::leray(rhs_u));
    u_ref = dn::leray(dn::helmholtz(u_ref, dt * s.cfg.nu));

    CHECK(oracle::max_abs_diff(fast.phi, phi_ref) < 1e-10);
    CHECK(oracle::max_abs_diff(fast.u, u_ref) < 1e-10);
}

TEST_CASE("mass conservation, divergence and determinism over many steps") {
    Setup s = make_setup(32, 1e-3, 0.2);
    const State init = smooth_state(s, 33);
    const double mass0 = mean(init.phi);
    const Control zero(s.grid, s.cfg.n_steps(), s.cfg.dt);
    const Trajectory a = solve_forward(init, zero, s.cfg, s.kernel, s.potential);
    for (const State& st : a.states()) {
        CHECK(std::abs(mean(st.phi) - mass0) <= 1e-10 * (1.0 + std::abs(mass0)));
        CHECK(max_abs(div(st.u)) < 1e-11);
    }
    // bit-identical repeat run
    const Trajectory b = solve_forward(init, zero, s.cfg, s.kernel, s.potential);
    CHECK(oracle::max_abs_diff(a.states().back().phi, b.states().back().phi) == 0.0);
    CHECK(oracle::max_abs_diff(a.states().back().u, b.states().back().u) == 0.0);
}

TEST_CASE("uncontrolled energy decays and the discrete energy identity is first order") {
    // residual r_n = (E_{n+1}-E_n)/dt + nu ||grad u_{n+1}||^2 + ||grad mu_n||^2
    auto residual_max = [](const Setup& s, const State& init) {
        const Control zero(s.grid, s.cfg.n_steps(), s.cfg.dt);
        const Trajectory traj = solve_forward(init, zero, s.cfg, s.kernel, s.potential);
        const auto& d = traj.diagnostics();
        double rmax = 0.0;
        for (std::size_t n = 0; n + 1 < d.size(); ++n) {
            const double r = (d[n + 1].energy - d[n].energy) / s.cfg.dt +
                             s.cfg.nu * d[n + 1].enstrophy + d[n].grad_mu_sq;
            rmax = std::max(rmax, std::abs(r));
        }
        // energy non-increasing after the first step
        for (std::size_t n = 1; n + 1 < d.size(); ++n)
            CHECK(d[n + 1].energy <= d[n].energy + 1e-10);
        return rmax;
    };

    Setup coarse = make_setup(32, 2e-3, 0.1);
    Setup fine = make_setup(32, 1e-3, 0.1);
    const State init = smooth_state(coarse, 55);
    const double r_coarse = residual_max(coarse, init);
    const double r_fine = residual_max(fine, init);
    CHECK(r_coarse / r_fine == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("blow-up raises with step index and partial trajectory") {
    Setup s = make_setup(32, 0.5, 8.0, 1e-3);
    std::mt19937_64 rng(77);
    // vigorous velocity, no dissipation to speak of, dt far beyond CFL
    VectorField u(oracle::smooth_random_field(s.grid, rng, 4, 30.0),
                  oracle::smooth_random_field(s.grid, rng, 4, 30.0));
    State init{leray_project(u), dealias(oracle::smooth_random_field(s.grid, rng, 3, 1.0)), 0.0};
    const Control zero(s.grid, s.cfg.n_steps(), s.cfg.dt);
    bool threw = false;
    try {
        solve_forward(init, zero, s.cfg, s.kernel, s.potential);
    } catch (const BlowupError& e) {
        threw = true;
        CHECK(e.partial() != nullptr);
        CHECK(e.partial()->states().size() == e.step_index() + 1);
        CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("forcing enters like the control") {
    Setup s = make_setup(16, 1e-3, 0.01);
    const State init = smooth_state(s, 91);
    std::mt19937_64 rng(92);
    Control f(s.grid, s.cfg.n_steps(), s.cfg.dt);
    for (std::size_t n = 0; n < f.steps(); ++n)
        f[n] = leray_project(VectorField(oracle::smooth_random_field(s.grid, rng, 2, 0.2),
                                         oracle::smooth_random_field(s.grid, rng, 2, 0.2)));
    const Control zero(s.grid, s.cfg.n_steps(), s.cfg.dt);

    SolverConfig with_forcing = s.cfg;
    with_forcing.forcing = f;
    const Trajectory a = solve_forward(init, zero, with_forcing, s.kernel, s.potential);
    const Trajectory b = solve_forward(init, f, s.cfg, s.kernel, s.potential);
    CHECK(oracle::max_abs_diff(a.states().back().u, b.states().back().u) < 1e-14);
    CHECK(oracle::max_abs_diff(a.states().back().phi, b.states().back().phi) < 1e-14);
}
