#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chns/operators.hpp"
#include "chns/spectral.hpp"
#include "test_support.hpp"

using namespace chns;

TEST_CASE("grid validation") {
    CHECK_NOTHROW(Grid(8, 8));
    CHECK_THROWS_AS(Grid(12, 16), std::invalid_argument);
    CHECK_THROWS_AS(Grid(4, 8), std::invalid_argument);
    CHECK_THROWS_AS(Grid(16, 16, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("grad matches analytic derivatives") {
    auto grid = make_grid(64, 64);
    const ScalarField f = oracle::fill(grid, [](double x, double) { return std::sin(x); });
    const VectorField g = grad(f);
    const ScalarField gx_exact = oracle::fill(grid, [](double x, double) { return std::cos(x); });
    CHECK(oracle::max_abs_diff(g.x(), gx_exact) < 1e-12);
    CHECK(max_abs(g.y()) < 1e-12);

    const ScalarField c(grid, 3.7);
    CHECK(max_abs(grad(c).x()) < 1e-13);
    CHECK(max_abs(grad(c).y()) < 1e-13);
}

TEST_CASE("grad components have zero mean") {
    auto grid = make_grid(16, 16);
    std::mt19937_64 rng(7);
    const ScalarField f = oracle::full_spectrum_random_field(grid, rng);
    const VectorField g = grad(f);
    CHECK(std::abs(mean(g.x())) < 1e-13);
    CHECK(std::abs(mean(g.y())) < 1e-13);
}

TEST_CASE("grad rejects non-finite input") {
    auto grid = make_grid(8, 8);
    ScalarField f(grid);
    f[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(grad(f), std::invalid_argument);
}

TEST_CASE("grad converges at 8th order against finite differences") {
    std::mt19937_64 rng(42);
    double err_coarse = 0.0, err_fine = 0.0;
    for (std::size_t pass = 0; pass < 2; ++pass) {
        auto grid = make_grid(pass == 0 ? 32 : 64, pass == 0 ? 32 : 64);
        std::mt19937_64 local(42);  // same modes on both grids
        const ScalarField f = oracle::smooth_random_field(grid, local, 3);
        const VectorField g = grad(f);
        const double ex = oracle::max_abs_diff(g.x(), oracle::ddx_fd8(f));
        const double ey = oracle::max_abs_diff(g.y(), oracle::ddy_fd8(f));
        (pass == 0 ? err_coarse : err_fine) = std::max(ex, ey);
    }
    // FD8 truncation dominates; halving h must shrink it by about 2^8.
    CHECK(err_fine < 1e-5);
    CHECK(err_fine < err_coarse / 100.0);
}

TEST_CASE("div analytic and identity checks") {
    auto grid = make_grid(64, 64);
    const VectorField v(oracle::fill(grid, [](double x, double) { return std::sin(x); }),
                        oracle::fill(grid, [](double, double y) { return std::sin(y); }));
    const ScalarField d = div(v);
    const ScalarField exact =
        oracle::fill(grid, [](double x, double y) { return std::cos(x) + std::cos(y); });
    CHECK(oracle::max_abs_diff(d, exact) < 1e-12);

    ScalarField bad(grid);
    bad[0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(div(VectorField(bad, ScalarField(grid))), std::invalid_argument);
}

TEST_CASE("div(grad f) equals laplacian(f) for full-spectrum random fields") {
    auto grid = make_grid(16, 16);
    std::mt19937_64 rng(3);
    const ScalarField f = oracle::full_spectrum_random_field(grid, rng);
    const ScalarField lhs = div(grad(f));
    const ScalarField rhs = laplacian(f);
    CHECK(oracle::max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("laplacian analytic checks") {
    auto grid = make_grid(64, 64);
    const ScalarField f = oracle::fill(grid, [](double x, double) { return std::sin(2.0 * x); });
    const ScalarField exact =
        oracle::fill(grid, [](double x, double) { return -4.0 * std::sin(2.0 * x); });
    CHECK(oracle::max_abs_diff(laplacian(f), exact) < 1e-12);
    const ScalarField c(grid, -2.5);
    CHECK(max_abs(laplacian(c)) < 1e-13);

    std::mt19937_64 rng(11);
    const ScalarField r = oracle::full_spectrum_random_field(grid, rng);
    CHECK(std::abs(mean(laplacian(r))) < 1e-13);
}

TEST_CASE("leray projection properties") {
    auto grid = make_grid(32, 32);
    std::mt19937_64 rng(5);

    SUBCASE("divergence-free fields are fixed points") {
        // v = curl of a stream function is exactly divergence free.
        const ScalarField psi = oracle::smooth_random_field(grid, rng, 4);
        const VectorField gp = grad(psi);
        const VectorField v(-1.0 * gp.y(), gp.x());
        CHECK(oracle::max_abs_diff(leray_project(v), v) < 1e-12);
    }

    SUBCASE("gradients project to zero") {
        const ScalarField f = oracle::smooth_random_field(grid, rng, 4);
        const VectorField g = grad(f);
        const VectorField pg = leray_project(g);
        CHECK(max_abs(pg.x()) < 1e-12);
        CHECK(max_abs(pg.y()) < 1e-12);
    }

    SUBCASE("kills divergence, idempotent, self-adjoint") {
        const VectorField v(oracle::full_spectrum_random_field(grid, rng),
                            oracle::full_spectrum_random_field(grid, rng));
        const VectorField w(oracle::full_spectrum_random_field(grid, rng),
                            oracle::full_spectrum_random_field(grid, rng));
        const VectorField pv = leray_project(v);
        CHECK(max_abs(div(pv)) < 1e-12);
        CHECK(oracle::max_abs_diff(leray_project(pv), pv) < 1e-13);
        const double self_adjoint_gap =
            std::abs(inner(pv, w) - inner(v, leray_project(w)));
        CHECK(self_adjoint_gap < 1e-12 * norm_l2(v) * norm_l2(w));
    }
}

TEST_CASE("inner products and norms") {
    auto grid = make_grid(32, 32);
    const ScalarField one(grid, 1.0);
    CHECK(inner(one, one) == doctest::Approx(4.0 * oracle::pi * oracle::pi).epsilon(1e-13));

    const ScalarField s = oracle::fill(grid, [](double x, double) { return std::sin(x); });
    const ScalarField c = oracle::fill(grid, [](double x, double) { return std::cos(x); });
    CHECK(std::abs(inner(s, c)) < 1e-12);

    std::mt19937_64 rng(9);
    const ScalarField f = oracle::full_spectrum_random_field(grid, rng);
    double direct = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) direct += f[n] * f[n];
    direct *= grid->cell_area();
    CHECK(std::abs(inner(f, f) - direct) < 1e-13 * std::max(1.0, direct));

    CHECK_THROWS_AS(inner(f, ScalarField(make_grid(16, 16))), std::invalid_argument);
}

TEST_CASE("Parseval: physical inner product equals spectral inner product") {
    auto grid = make_grid(32, 32);
    std::mt19937_64 rng(13);
    const ScalarField f = oracle::full_spectrum_random_field(grid, rng);
    const ScalarField g = oracle::full_spectrum_random_field(grid, rng);
    const double phys = inner(f, g);
    const double spec = spectral_inner(f, g);
    CHECK(std::abs(phys - spec) < 1e-12 * std::max(1.0, std::abs(phys)));
}

TEST_CASE("dealias removes only the top third of modes") {
    auto grid = make_grid(32, 32);
    // Mode inside the cutoff survives untouched.
    const ScalarField low = oracle::fill(grid, [](double x, double y) {
        return std::sin(3.0 * x) + std::cos(2.0 * y);
    });
    CHECK(oracle::max_abs_diff(dealias(low), low) < 1e-13);
    // Mode above 2/3 Nyquist (k = 12 > 32/3) vanishes.
    const ScalarField high = oracle::fill(grid, [](double x, double) { return std::sin(12.0 * x); });
    CHECK(max_abs(dealias(high)) < 1e-13);
    // Constants are untouched.
    const ScalarField c(grid, 0.77);
    CHECK(oracle::max_abs_diff(dealias(c), c) < 1e-14);
}

TEST_CASE("anisotropic non-square grids") {
    // nx != ny and lx != ly: exercises every row-major index path
    auto grid = make_grid(16, 32, 2.0 * oracle::pi, 4.0 * oracle::pi);
    const ScalarField f = oracle::fill(grid, [](double x, double y) {
        return std::sin(x) * std::cos(0.5 * y);
    });
    const VectorField g = grad(f);
    const ScalarField gx = oracle::fill(grid, [](double x, double y) {
        return std::cos(x) * std::cos(0.5 * y);
    });
    const ScalarField gy = oracle::fill(grid, [](double x, double y) {
        return -0.5 * std::sin(x) * std::sin(0.5 * y);
    });
    CHECK(oracle::max_abs_diff(g.x(), gx) < 1e-12);
    CHECK(oracle::max_abs_diff(g.y(), gy) < 1e-12);

    std::mt19937_64 rng(23);
    const ScalarField r = oracle::full_spectrum_random_field(grid, rng);
    CHECK(oracle::max_abs_diff(div(grad(r)), laplacian(r)) < 1e-12);
    const VectorField v(oracle::full_spectrum_random_field(grid, rng),
                        oracle::full_spectrum_random_field(grid, rng));
    CHECK(max_abs(div(leray_project(v))) < 1e-12);
    CHECK(std::abs(inner(r, r) - spectral_inner(r, r)) < 1e-12 * std::max(1.0, inner(r, r)));
}

TEST_CASE("helmholtz solve inverts (1 - c Lap)") {
    auto grid = make_grid(32, 32);
    std::mt19937_64 rng(17);
    const ScalarField f = oracle::smooth_random_field(grid, rng, 4);
    const double c = 0.37;
    ScalarField lhs = helmholtz_solve(f, c);
    ScalarField recomposed = lhs - c * laplacian(lhs);
    CHECK(oracle::max_abs_diff(recomposed, f) < 1e-12);
}
