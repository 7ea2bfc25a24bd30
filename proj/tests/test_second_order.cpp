#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chns/operators.hpp"
#include "chns/second_order.hpp"
#include "test_support.hpp"

using namespace chns;

namespace {

struct Setup {
    GridPtr grid;
    Kernel kernel;
    Potential potential;
    SolverConfig cfg;
};

Setup make_setup(std::size_t n, double dt, double t_final, bool synthetic_a = false) {
    auto grid = make_grid(n, n);
    std::optional<ScalarField> a;
    if (synthetic_a)
        a = oracle::fill(grid, [](double x, double y) {
            return 6.0 + 0.8 * std::cos(x) + 0.5 * std::cos(y);
        });
    Setup s{grid, build_kernel(GaussianKernelSpec{0.5, 5.0}, grid, std::move(a)),
            Potential::double_well(), {}};
    s.cfg.nu = 0.05;
    s.cfg.dt = dt;
    s.cfg.t_final = t_final;
    return s;
}

State smooth_state(const Setup& s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ScalarField phi = oracle::smooth_random_field(s.grid, rng, 2, 0.3);
    VectorField u(oracle::smooth_random_field(s.grid, rng, 2, 0.4),
                  oracle::smooth_random_field(s.grid, rng, 2, 0.4));
    return State{leray_project(dealias(u)), dealias(phi), 0.0};
}

Control smooth_control(const Setup& s, std::uint64_t seed, double amp) {
    std::mt19937_64 rng(seed);
    const std::size_t n = s.cfg.n_steps();
    Control c(s.grid, n, s.cfg.dt);
    const VectorField shape = random_solenoidal(s.grid, rng, 2.5);
    for (std::size_t m = 0; m < n; ++m)
        c[m] = (amp * std::sin(oracle::pi * (s.cfg.dt * m) / s.cfg.t_final)) * shape;
    return c;
}

}  // namespace

TEST_CASE("feasible difference of the base control is identically zero") {
    Setup s = make_setup(16, 1e-3, 0.02);
    const State init = smooth_state(s, 1);
    const Control u = smooth_control(s, 2, 0.4);
    const Trajectory base = solve_forward(init, u, s.cfg, s.kernel, s.potential);
    const FeasibleDifference diff = feasible_difference(base, u, s.cfg, s.kernel, s.potential);
    for (const auto& du : diff.du) CHECK(max_abs(du) == 0.0);
    for (const auto& dphi : diff.dphi) CHECK(max_abs(dphi) == 0.0);
    CHECK(norm_l2t(diff.delta_control) == 0.0);
}

TEST_CASE("feasible difference scales linearly in the control perturbation") {
    Setup s = make_setup(16, 1e-3, 0.04);
    const State init = smooth_state(s, 3);
    const Control u = smooth_control(s, 4, 0.4);
    const Trajectory base = solve_forward(init, u, s.cfg, s.kernel, s.potential);
    std::mt19937_64 rng(5);
    const Control dir = random_control_direction(s.grid, s.cfg.n_steps(), s.cfg.dt, rng);

    auto magnitude = [&](double lambda) {
        Control w = u;
        w.axpy(lambda, dir);
        const FeasibleDifference diff = feasible_difference(base, w, s.cfg, s.kernel, s.potential);
        double m = 0.0;
        for (const auto& du : diff.du) m = std::max(m, norm_l2(du));
        return m;
    };
    const double m2 = magnitude(1e-2);
    const double m3 = magnitude(1e-3);
    const double m4 = magnitude(1e-4);
    CHECK(m3 == doctest::Approx(m2 / 10.0).epsilon(0.05));
    CHECK(m4 == doctest::Approx(m3 / 10.0).epsilon(0.05));
    // initial slices share the initial data
    Control w = u;
    w.axpy(1e-2, dir);
    const FeasibleDifference diff = feasible_difference(base, w, s.cfg, s.kernel, s.potential);
    CHECK(max_abs(diff.du[0]) == 0.0);
    CHECK(max_abs(diff.dphi[0]) == 0.0);
    for (const auto& du : diff.du) CHECK(max_abs(div(du)) < 1e-11);
}

TEST_CASE("feasible difference satisfies its own PDE to O(dt)") {
    // Continuous-form residual of the difference system evaluated on the
    // discrete difference: first-order in dt by construction of the stepper.
    auto residual = [](double dt) {
        Setup s = make_setup(16, dt, 0.04);
        const State init = smooth_state(s, 6);
        const Control u = smooth_control(s, 7, 0.4);
        const Trajectory base = solve_forward(init, u, s.cfg, s.kernel, s.potential);
        Control w = u;
        std::mt19937_64 rng(8);
        const Control dir = random_control_direction(s.grid, s.cfg.n_steps(), s.cfg.dt, rng);
        w.axpy(0.5, dir);
        const FeasibleDifference diff = feasible_difference(base, w, s.cfg, s.kernel, s.potential);

        double r_max = 0.0;
        for (std::size_t n = 0; n + 1 < base.states().size(); ++n) {
            const VectorField& du = diff.du[n];
            const ScalarField& dphi = diff.dphi[n];
            const State& bs = base.state(n);

            // velocity equation residual, projected (pressure-free form)
            VectorField r_u = diff.du[n + 1] - du;
            r_u *= 1.0 / dt;
            r_u -= s.cfg.nu * VectorField(laplacian(du.x()), laplacian(du.y()));
            const VectorField gdux = grad(du.x());
            const VectorField gduy = grad(du.y());
            const VectorField gbux = grad(bs.u.x());
            const VectorField gbuy = grad(bs.u.y());
            r_u += VectorField(dot(du, gbux), dot(du, gbuy));   // (du.grad)u*
            r_u += VectorField(dot(bs.u, gdux), dot(bs.u, gduy));  // (u*.grad)du
            r_u += multiply(grad(bs.phi), convolve(s.kernel, dphi));
            r_u += multiply(grad(dphi), convolve(s.kernel, bs.phi));
            r_u += VectorField(dot(du, gdux), dot(du, gduy));   // (du.grad)du
            r_u += multiply(grad(dphi), convolve(s.kernel, dphi));
            r_u -= diff.delta_control[n];
            // the discrete dynamics live in the 2/3-truncated space, so the
            // residual is measured there as well
            r_u = leray_project(dealias(r_u));

            // phi equation residual
            ScalarField r_phi = diff.dphi[n + 1] - dphi;
            r_phi *= 1.0 / dt;
            r_phi += dot(du, grad(bs.phi));
            r_phi += dot(bs.u, grad(dphi));
            r_phi += dot(du, grad(dphi));
            ScalarField mu_tilde = multiply(s.kernel.a(), dphi);
            mu_tilde -= convolve(s.kernel, dphi);
            for (std::size_t m = 0; m < mu_tilde.size(); ++m)
                mu_tilde[m] += s.potential.d1(bs.phi[m] + dphi[m]) - s.potential.d1(bs.phi[m]);
            r_phi -= laplacian(dealias(mu_tilde));
            r_phi = dealias(r_phi);

            r_max = std::max({r_max, norm_l2(r_u), norm_l2(r_phi)});
        }
        return r_max;
    };
    const double r1 = residual(2e-3);
    const double r2 = residual(1e-3);
    INFO("difference-PDE residuals: dt=2e-3 -> ", r1, ", dt=1e-3 -> ", r2);
    CHECK(r2 < 0.7 * r1);
    CHECK(r2 < 20.0 * 1e-3);  // C dt with C frozen at 20
}

TEST_CASE("quadratic form: zero difference and the 2 delta-J identity") {
    for (bool synthetic : {false, true}) {
        CAPTURE(synthetic);
        Setup s = make_setup(16, 1e-3, 0.04, synthetic);
        const State init = smooth_state(s, 9);
        const Control u = smooth_control(s, 10, 0.4);
        const Trajectory base = solve_forward(init, u, s.cfg, s.kernel, s.potential);
        const Control other = smooth_control(s, 11, 0.6);
        const Trajectory target_traj = solve_forward(init, other, s.cfg, s.kernel, s.potential);
        const TargetSpec targets = targets_from_trajectory(target_traj);
        const auto adj = solve_adjoint(base, targets, s.kernel, s.potential, s.cfg);

        SUBCASE("zero difference gives exactly zero") {
            const FeasibleDifference diff =
                feasible_difference(base, u, s.cfg, s.kernel, s.potential);
            CHECK(quadratic_form(diff, adj, base, s.kernel, s.potential, targets) == 0.0);
        }

        SUBCASE("Q equals 2 [J(W) - J(U*)] to near-roundoff, stationary or not") {
            std::mt19937_64 rng(12);
            const Control dir = random_control_direction(s.grid, s.cfg.n_steps(), s.cfg.dt, rng);
            for (double scale : {1e-1, 1e-2}) {
                Control w = u;
                w.axpy(scale, dir);
                const FeasibleDifference diff =
                    feasible_difference(base, w, s.cfg, s.kernel, s.potential);
                const double q = quadratic_form(diff, adj, base, s.kernel, s.potential, targets);

                const Trajectory perturbed = solve_forward(init, w, s.cfg, s.kernel, s.potential);
                const double two_dj = 2.0 * (cost(perturbed, w, targets).total -
                                             cost(base, u, targets).total);
                INFO("scale ", scale, ": Q = ", q, ", 2dJ = ", two_dj);
                CHECK(std::abs(q - two_dj) / std::max({std::abs(two_dj), 1e-12}) < 1e-9);
            }
        }
    }
}

TEST_CASE("fd curvature: zero direction, evenness, positivity near a minimum") {
    Setup s = make_setup(16, 1e-3, 0.04);
    const State init = smooth_state(s, 13);
    const Control twin = smooth_control(s, 14, 0.4);
    const Trajectory target_traj = solve_forward(init, twin, s.cfg, s.kernel, s.potential);
    const TargetSpec targets = targets_from_trajectory(target_traj);

    SUBCASE("zero direction gives exactly zero") {
        const Control zero_dir(s.grid, s.cfg.n_steps(), s.cfg.dt);
        CHECK(curvature_fd(twin, zero_dir, 1e-2, init, targets, s.cfg, s.kernel, s.potential) ==
              0.0);
    }

    SUBCASE("even in the direction sign and positive at the global minimum") {
        std::mt19937_64 rng(15);
        const Control dir = random_control_direction(s.grid, s.cfg.n_steps(), s.cfg.dt, rng);
        Control neg = dir;
        neg *= -1.0;
        const double c_plus =
            curvature_fd(twin, dir, 1e-2, init, targets, s.cfg, s.kernel, s.potential);
        const double c_minus =
            curvature_fd(twin, neg, 1e-2, init, targets, s.cfg, s.kernel, s.potential);
        CHECK(c_plus == doctest::Approx(c_minus).epsilon(1e-8));
        // twin control is the exact global minimizer (J = 0 there): curvature
        // must be at least the control-energy term gamma ||V||^2 = 1
        CHECK(c_plus > 0.9);
    }
}
