#include "chns/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chns/spectral.hpp"

namespace chns {

namespace {

void check_even(const ScalarField& samples) {
    const Grid& g = samples.grid();
    const double scale = std::max(1.0, max_abs(samples));
    for (std::size_t j = 0; j < g.ny(); ++j) {
        const std::size_t jm = (g.ny() - j) % g.ny();
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const std::size_t im = (g.nx() - i) % g.nx();
            if (std::abs(samples.at(i, j) - samples.at(im, jm)) > 1e-12 * scale)
                throw std::invalid_argument("build_kernel: samples violate J(x) = J(-x)");
        }
    }
}

ScalarField gaussian_samples(const GaussianKernelSpec& spec, const GridPtr& grid) {
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("build_kernel: gaussian sigma must be > 0");
    const Grid& g = *grid;
    ScalarField s(grid);
    const double inv2s2 = 1.0 / (2.0 * spec.sigma * spec.sigma);
    for (std::size_t j = 0; j < g.ny(); ++j) {
        const double yd = std::min(g.y(j), g.ly() - g.y(j));
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const double xd = std::min(g.x(i), g.lx() - g.x(i));
            s.at(i, j) = std::exp(-(xd * xd + yd * yd) * inv2s2);
        }
    }
    double total = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) total += s[n];
    total *= g.cell_area();
    s *= spec.strength / total;
    return s;
}

}  // namespace

Kernel::Kernel(GridPtr grid, ScalarField samples, std::vector<double> symbol, ScalarField a,
               VectorField grad_a, KernelMode mode)
    : grid_(std::move(grid)),
      samples_(std::move(samples)),
      symbol_(std::move(symbol)),
      a_(std::move(a)),
      grad_a_(std::move(grad_a)),
      mode_(mode) {
    a_mean_ = mean(a_);
    a_min_ = a_[0];
    for (std::size_t n = 0; n < a_.size(); ++n) a_min_ = std::min(a_min_, a_[n]);
}

Kernel build_kernel(const KernelShape& shape, const GridPtr& grid,
                    std::optional<ScalarField> synthetic_a) {
    ScalarField samples = std::visit(
        [&](const auto& spec) -> ScalarField {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, GaussianKernelSpec>) {
                return gaussian_samples(spec, grid);
            } else if constexpr (std::is_same_v<T, DeltaKernelSpec>) {
                ScalarField s(grid);
                s[0] = 1.0 / grid->cell_area();
                return s;
            } else {
                ScalarField s(grid, spec.samples);
                return s;
            }
        },
        shape);
    check_even(samples);

    Spectrum sym_c = to_spectrum(samples);
    std::vector<double> symbol(sym_c.size());
    const double h2 = grid->cell_area();
    double max_imag = 0.0;
    for (std::size_t n = 0; n < sym_c.size(); ++n) {
        symbol[n] = h2 * sym_c[n].real();
        max_imag = std::max(max_imag, std::abs(sym_c[n].imag()) * h2);
    }
    if (max_imag > 1e-10 * std::max(1.0, std::abs(symbol[0])))
        throw std::invalid_argument("build_kernel: kernel symbol is not real (J not even?)");

    KernelMode mode = KernelMode::translation_invariant;
    ScalarField a(grid, symbol[0]);  // sum(J) h^2 = the k=0 symbol value
    VectorField grad_a(grid, 0.0);
    if (synthetic_a) {
        require_same_grid(synthetic_a->grid(), *grid, "build_kernel synthetic a");
        a = std::move(*synthetic_a);
        grad_a = grad(a);
        mode = KernelMode::synthetic_a;
    }
    for (std::size_t n = 0; n < a.size(); ++n)
        if (a[n] < 0.0) throw std::invalid_argument("build_kernel: a(x) must be nonnegative");

    return Kernel(grid, std::move(samples), std::move(symbol), std::move(a), std::move(grad_a),
                  mode);
}

ScalarField convolve(const Kernel& kernel, const ScalarField& f) {
    require_same_grid(kernel.grid(), f.grid(), "convolve");
    Spectrum fs = to_spectrum(f);
    const std::vector<double>& sym = kernel.symbol();
    for (std::size_t n = 0; n < fs.size(); ++n) fs[n] *= sym[n];
    return to_field(std::move(fs), f.grid_ptr());
}

VectorField grad_convolve(const Kernel& kernel, const ScalarField& f) {
    return grad(convolve(kernel, f));
}

}  // namespace chns
