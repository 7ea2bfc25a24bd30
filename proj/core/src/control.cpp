#include "chns/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chns/operators.hpp"
#include "chns/spectral.hpp"

namespace chns {

Control::Control(GridPtr grid, std::size_t n_steps, double dt)
    : grid_(grid), slices_(n_steps, VectorField(grid)), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("Control: dt must be > 0");
}

namespace {
void require_compatible(const Control& a, const Control& b, const char* what) {
    if (a.steps() != b.steps()) throw std::invalid_argument(std::string(what) + ": length mismatch");
}
}  // namespace

Control& Control::operator+=(const Control& other) {
    require_compatible(*this, other, "Control::operator+=");
    for (std::size_t n = 0; n < slices_.size(); ++n) slices_[n] += other.slices_[n];
    return *this;
}

Control& Control::operator-=(const Control& other) {
    require_compatible(*this, other, "Control::operator-=");
    for (std::size_t n = 0; n < slices_.size(); ++n) slices_[n] -= other.slices_[n];
    return *this;
}

Control& Control::operator*=(double s) {
    for (auto& slice : slices_) slice *= s;
    return *this;
}

Control& Control::axpy(double s, const Control& other) {
    require_compatible(*this, other, "Control::axpy");
    for (std::size_t n = 0; n < slices_.size(); ++n) slices_[n].axpy(s, other.slices_[n]);
    return *this;
}

double Control::max_divergence() const {
    double m = 0.0;
    for (const auto& slice : slices_) m = std::max(m, max_abs(div(slice)));
    return m;
}

Control operator+(Control a, const Control& b) { return a += b; }
Control operator-(Control a, const Control& b) { return a -= b; }
Control operator*(double s, Control a) { return a *= s; }

double inner(const Control& a, const Control& b) {
    if (a.steps() != b.steps()) throw std::invalid_argument("inner(Control): length mismatch");
    double acc = 0.0;
    for (std::size_t n = 0; n < a.steps(); ++n) acc += inner(a[n], b[n]);
    return acc * a.dt();
}

double norm_l2t(const Control& c) { return std::sqrt(inner(c, c)); }

ScalarField random_smooth_scalar(const GridPtr& grid, std::mt19937_64& rng, double k0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Grid& g = *grid;
    const std::size_t nkx = g.nkx();
    Spectrum s(g.spectral_size(), 0.0);
    for (std::size_t kj = 0; kj < g.ny(); ++kj) {
        for (std::size_t ki = 0; ki < nkx; ++ki) {
            if (!detail::mode_kept(g, ki, kj)) continue;
            if (ki == 0 && kj == 0) continue;  // zero mean
            const double k2 = g.kx(ki) * g.kx(ki) + g.ky(kj) * g.ky(kj);
            if (k2 == 0.0) continue;
            const double amp = std::exp(-k2 / (k0 * k0));
            s[kj * nkx + ki] = std::complex<double>(gauss(rng), gauss(rng)) * amp;
        }
    }
    // Enforce the Hermitian pairs stored inside the half plane (ki = 0 column).
    for (std::size_t kj = 1; kj < g.ny() / 2; ++kj)
        s[(g.ny() - kj) * nkx] = std::conj(s[kj * nkx]);
    s[(g.ny() / 2) * nkx] = s[(g.ny() / 2) * nkx].real();
    ScalarField f = to_field(std::move(s), grid);
    const double nrm = norm_l2(f);
    if (nrm > 0.0) f *= 1.0 / nrm;
    return f;
}

VectorField random_solenoidal(const GridPtr& grid, std::mt19937_64& rng, double k0) {
    VectorField v(random_smooth_scalar(grid, rng, k0), random_smooth_scalar(grid, rng, k0));
    v = leray_project(v);
    const double nrm = norm_l2(v);
    if (nrm > 0.0) v *= 1.0 / nrm;
    return v;
}

Control random_control_direction(const GridPtr& grid, std::size_t n_steps, double dt,
                                 std::mt19937_64& rng, double k0) {
    // Coherent in time: a few random solenoidal shapes under low-order
    // temporal envelopes, so the direction probes the L2(0,T) gradient
    // rather than slice-to-slice noise.
    constexpr std::size_t n_modes = 3;
    std::uniform_real_distribution<double> phase_dist(0.0, Grid::two_pi());
    const double t_final = dt * static_cast<double>(n_steps);
    Control c(grid, n_steps, dt);
    for (std::size_t m = 1; m <= n_modes; ++m) {
        const VectorField shape = random_solenoidal(grid, rng, k0);
        const double phase = phase_dist(rng);
        const double omega =
            0.5 * Grid::two_pi() * static_cast<double>(m) / std::max(t_final, dt);
        for (std::size_t n = 0; n < n_steps; ++n) {
            const double t = dt * static_cast<double>(n);
            c[n].axpy(std::cos(omega * t + phase), shape);
        }
    }
    const double nrm = norm_l2t(c);
    if (nrm > 0.0) c *= 1.0 / nrm;
    return c;
}

}  // namespace chns
