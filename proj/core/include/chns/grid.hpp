#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace chns {

/// Uniform periodic grid on the torus [0,lx) x [0,ly).
///
/// Point (i,j) sits at (i*dx, j*dy); values are stored row-major with x
/// fastest (index = j*nx + i). Wavenumber arrays follow the FFT half-plane
/// layout used by the spectral operators; first-derivative wavenumbers are
/// zeroed on the Nyquist modes so that div(grad f) == laplacian(f) holds
/// exactly for every real field.
class Grid {
  public:
    Grid(std::size_t nx, std::size_t ny, double lx = two_pi(), double ly = two_pi());

    static constexpr double two_pi() { return 6.283185307179586476925286766559; }

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    double dx() const { return lx_ / static_cast<double>(nx_); }
    double dy() const { return ly_ / static_cast<double>(ny_); }
    std::size_t size() const { return nx_ * ny_; }
    /// Quadrature weight of one grid cell.
    double cell_area() const { return dx() * dy(); }
    /// Number of retained complex modes in the r2c half plane.
    std::size_t spectral_size() const { return (nx_ / 2 + 1) * ny_; }
    std::size_t nkx() const { return nx_ / 2 + 1; }

    double x(std::size_t i) const { return dx() * static_cast<double>(i); }
    double y(std::size_t j) const { return dy() * static_cast<double>(j); }
    std::size_t index(std::size_t i, std::size_t j) const { return j * nx_ + i; }

    /// d/dx wavenumber for half-plane index ki (Nyquist zeroed).
    double kx(std::size_t ki) const { return kx_[ki]; }
    /// d/dy wavenumber for row kj (Nyquist zeroed).
    double ky(std::size_t kj) const { return ky_[kj]; }
    const std::vector<double>& kx_all() const { return kx_; }
    const std::vector<double>& ky_all() const { return ky_; }

    bool same_as(const Grid& other) const {
        return nx_ == other.nx_ && ny_ == other.ny_ && lx_ == other.lx_ && ly_ == other.ly_;
    }

  private:
    std::size_t nx_, ny_;
    double lx_, ly_;
    std::vector<double> kx_, ky_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(std::size_t nx, std::size_t ny, double lx = Grid::two_pi(),
                  double ly = Grid::two_pi());

}  // namespace chns
