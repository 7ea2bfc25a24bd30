#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chns/field.hpp"

namespace chns {

/// Distributed control U: one divergence-free vector field per time step
/// index 0..N-1, paired with the left-endpoint rule in time.
class Control {
  public:
    Control() = default;
    Control(GridPtr grid, std::size_t n_steps, double dt);

    std::size_t steps() const { return slices_.size(); }
    double dt() const { return dt_; }
    const GridPtr& grid_ptr() const { return grid_; }

    VectorField& operator[](std::size_t n) { return slices_[n]; }
    const VectorField& operator[](std::size_t n) const { return slices_[n]; }

    Control& operator+=(const Control& other);
    Control& operator-=(const Control& other);
    Control& operator*=(double s);
    Control& axpy(double s, const Control& other);

    /// Max over slices of sup |div U_n|.
    double max_divergence() const;

  private:
    GridPtr grid_;
    std::vector<VectorField> slices_;
    double dt_ = 0.0;
};

Control operator+(Control a, const Control& b);
Control operator-(Control a, const Control& b);
Control operator*(double s, Control a);

/// L2(0,T; Gdiv) pairing: sum_n dt (U_n, V_n).
double inner(const Control& a, const Control& b);
double norm_l2t(const Control& c);

/// Smooth random scalar field: unit Gaussian spectral amplitudes under the
/// filter exp(-|k|^2/k0^2), zero mean, normalized to unit L2 norm.
ScalarField random_smooth_scalar(const GridPtr& grid, std::mt19937_64& rng, double k0 = 3.0);

/// Divergence-free filtered Gaussian field (Leray-projected), unit L2 norm.
VectorField random_solenoidal(const GridPtr& grid, std::mt19937_64& rng, double k0 = 3.0);

/// Control direction with random solenoidal slices, unit L2(0,T) norm.
Control random_control_direction(const GridPtr& grid, std::size_t n_steps, double dt,
                                 std::mt19937_64& rng, double k0 = 3.0);

}  // namespace chns
