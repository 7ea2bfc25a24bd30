#pragma once

#include <vector>

#include "chns/grid.hpp"

namespace chns {

/// Real scalar field on a periodic grid, row-major (x fastest).
class ScalarField {
  public:
    ScalarField() = default;
    explicit ScalarField(GridPtr grid, double fill = 0.0);
    ScalarField(GridPtr grid, std::vector<double> values);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double& operator[](std::size_t n) { return values_[n]; }
    double operator[](std::size_t n) const { return values_[n]; }
    double& at(std::size_t i, std::size_t j) { return values_[grid_->index(i, j)]; }
    double at(std::size_t i, std::size_t j) const { return values_[grid_->index(i, j)]; }

    std::vector<double>& data() { return values_; }
    const std::vector<double>& data() const { return values_; }

    bool finite() const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);
    /// this += s * other
    ScalarField& axpy(double s, const ScalarField& other);

  private:
    GridPtr grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
/// Pointwise product a(x) * b(x).
ScalarField multiply(const ScalarField& a, const ScalarField& b);

/// Two-component real vector field; both components share one grid.
class VectorField {
  public:
    VectorField() = default;
    explicit VectorField(GridPtr grid, double fill = 0.0);
    VectorField(ScalarField x, ScalarField y);

    const Grid& grid() const { return x_.grid(); }
    const GridPtr& grid_ptr() const { return x_.grid_ptr(); }

    ScalarField& x() { return x_; }
    const ScalarField& x() const { return x_; }
    ScalarField& y() { return y_; }
    const ScalarField& y() const { return y_; }

    bool finite() const { return x_.finite() && y_.finite(); }

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double s);
    VectorField& axpy(double s, const VectorField& other);

  private:
    ScalarField x_, y_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);
/// Pointwise v(x) * f(x) for scalar f.
VectorField multiply(const VectorField& v, const ScalarField& f);
/// Pointwise dot product of two vector fields.
ScalarField dot(const VectorField& a, const VectorField& b);

/// L2 inner product with quadrature weight h^2: (f,g) = sum f*g*dx*dy.
double inner(const ScalarField& f, const ScalarField& g);
double inner(const VectorField& a, const VectorField& b);
double norm_l2(const ScalarField& f);
double norm_l2(const VectorField& v);
double mean(const ScalarField& f);
double max_abs(const ScalarField& f);
double max_abs(const VectorField& v);

void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace chns
