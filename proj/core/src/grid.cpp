#include "chns/grid.hpp"

#include <stdexcept>
#include <string>

namespace chns {

namespace {
bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(std::size_t nx, std::size_t ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
    if (!power_of_two(nx) || nx < 8 || !power_of_two(ny) || ny < 8)
        throw std::invalid_argument("Grid: nx and ny must be powers of two >= 8, got " +
                                    std::to_string(nx) + " x " + std::to_string(ny));
    if (!(lx > 0.0) || !(ly > 0.0))
        throw std::invalid_argument("Grid: domain lengths must be positive");

    const double fx = two_pi() / lx_;
    const double fy = two_pi() / ly_;
    kx_.resize(nx_ / 2 + 1);
    for (std::size_t ki = 0; ki <= nx_ / 2; ++ki) kx_[ki] = fx * static_cast<double>(ki);
    kx_[nx_ / 2] = 0.0;  // Nyquist carries no usable derivative information

    ky_.resize(ny_);
    for (std::size_t kj = 0; kj < ny_; ++kj) {
        const double m = (kj <= ny_ / 2) ? static_cast<double>(kj)
                                         : static_cast<double>(kj) - static_cast<double>(ny_);
        ky_[kj] = fy * m;
    }
    ky_[ny_ / 2] = 0.0;
}

GridPtr make_grid(std::size_t nx, std::size_t ny, double lx, double ly) {
    return std::make_shared<const Grid>(nx, ny, lx, ly);
}

}  // namespace chns
