#include "chns/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace chns {

namespace detail {

bool mode_kept(const Grid& g, std::size_t ki, std::size_t kj) {
    const std::size_t cut_x = g.nx() / 3;
    const std::size_t cut_y = g.ny() / 3;
    const std::size_t mj = (kj <= g.ny() / 2) ? kj : g.ny() - kj;
    return ki <= cut_x && mj <= cut_y;
}

void dealias_spectrum(const Grid& g, Spectrum& s) {
    const std::size_t nkx = g.nkx();
    for (std::size_t kj = 0; kj < g.ny(); ++kj)
        for (std::size_t ki = 0; ki < nkx; ++ki)
            if (!mode_kept(g, ki, kj)) s[kj * nkx + ki] = 0.0;
}

}  // namespace detail

VectorField grad(const ScalarField& f) {
    if (!f.finite()) throw std::invalid_argument("grad: non-finite input field");
    const Grid& g = f.grid();
    const std::size_t nkx = g.nkx();
    Spectrum fs = to_spectrum(f);
    Spectrum gx(fs.size()), gy(fs.size());
    const std::complex<double> I(0.0, 1.0);
    for (std::size_t kj = 0; kj < g.ny(); ++kj) {
        const double ky = g.ky(kj);
        for (std::size_t ki = 0; ki < nkx; ++ki) {
            const std::complex<double> v = fs[kj * nkx + ki];
            gx[kj * nkx + ki] = I * g.kx(ki) * v;
            gy[kj * nkx + ki] = I * ky * v;
        }
    }
    return VectorField(to_field(std::move(gx), f.grid_ptr()), to_field(std::move(gy), f.grid_ptr()));
}

ScalarField div(const VectorField& v) {
    if (!v.finite()) throw std::invalid_argument("div: non-finite input field");
    const Grid& g = v.grid();
    const std::size_t nkx = g.nkx();
    Spectrum xs = to_spectrum(v.x());
    Spectrum ys = to_spectrum(v.y());
    const std::complex<double> I(0.0, 1.0);
    for (std::size_t kj = 0; kj < g.ny(); ++kj) {
        const double ky = g.ky(kj);
        for (std::size_t ki = 0; ki < nkx; ++ki) {
            const std::size_t n = kj * nkx + ki;
            xs[n] = I * g.kx(ki) * xs[n] + I * ky * ys[n];
        }
    }
    return to_field(std::move(xs), v.grid_ptr());
}

ScalarField laplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    const std::size_t nkx = g.nkx();
    Spectrum fs = to_spectrum(f);
    for (std::size_t kj = 0; kj < g.ny(); ++kj) {
        const double ky2 = g.ky(kj) * g.ky(kj);
        for (std::size_t ki = 0; ki < nkx; ++ki)
            fs[kj * nkx + ki] *= -(g.kx(ki) * g.kx(ki) + ky2);
    }
    return to_field(std::move(fs), f.grid_ptr());
}

VectorField leray_project(const VectorField& v) {
    if (!v.finite()) throw std::invalid_argument("leray_project: non-finite input field");
    const Grid& g = v.grid();
    const std::size_t nkx = g.nkx();
    Spectrum xs = to_spectrum(v.x());
    Spectrum ys = to_spectrum(v.y());
    for (std::size_t kj = 0; kj < g.ny(); ++kj) {
        const double ky = g.ky(kj);
        for (std::size_t ki = 0; ki < nkx; ++ki) {
            const double kx = g.kx(ki);
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;  // mean flow and pure-Nyquist modes pass through
            const std::size_t n = kj * nkx + ki;
            const std::complex<double> kdotv = kx * xs[n] + ky * ys[n];
            xs[n] -= kx * kdotv / k2;
            ys[n] -= ky * kdotv / k2;
        }
    }
    return VectorField(to_field(std::move(xs), v.grid_ptr()),
                       to_field(std::move(ys), v.grid_ptr()));
}

ScalarField dealias(const ScalarField& f) {
    Spectrum fs = to_spectrum(f);
    detail::dealias_spectrum(f.grid(), fs);
    return to_field(std::move(fs), f.grid_ptr());
}

VectorField dealias(const VectorField& v) {
    return VectorField(dealias(v.x()), dealias(v.y()));
}

ScalarField helmholtz_solve(const ScalarField& f, double coef) {
    const Grid& g = f.grid();
    const std::size_t nkx = g.nkx();
    Spectrum fs = to_spectrum(f);
    for (std::size_t kj = 0; kj < g.ny(); ++kj) {
        const double ky2 = g.ky(kj) * g.ky(kj);
        for (std::size_t ki = 0; ki < nkx; ++ki) {
            const double k2 = g.kx(ki) * g.kx(ki) + ky2;
            fs[kj * nkx + ki] /= 1.0 + coef * k2;
        }
    }
    return to_field(std::move(fs), f.grid_ptr());
}

VectorField helmholtz_solve(const VectorField& f, double coef) {
    return VectorField(helmholtz_solve(f.x(), coef), helmholtz_solve(f.y(), coef));
}

double spectral_inner(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid(), g.grid(), "spectral_inner");
    const Grid& gr = f.grid();
    const std::size_t nkx = gr.nkx();
    Spectrum fs = to_spectrum(f);
    Spectrum gs = to_spectrum(g);
    double acc = 0.0;
    for (std::size_t kj = 0; kj < gr.ny(); ++kj) {
        for (std::size_t ki = 0; ki < nkx; ++ki) {
            const std::size_t n = kj * nkx + ki;
            // Half-plane storage: interior columns represent two conjugate modes.
            const double w = (ki == 0 || ki == gr.nx() / 2) ? 1.0 : 2.0;
            acc += w * (fs[n].real() * gs[n].real() + fs[n].imag() * gs[n].imag());
        }
    }
    const double n_total = static_cast<double>(gr.size());
    return acc / n_total / n_total * gr.lx() * gr.ly();
}

}  // namespace chns
