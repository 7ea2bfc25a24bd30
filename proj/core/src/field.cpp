#include "chns/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chns {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!a.same_as(b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

ScalarField::ScalarField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->size(), fill) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size())
        throw std::invalid_argument("ScalarField: value count does not match grid");
}

bool ScalarField::finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(grid(), other.grid(), "ScalarField::operator+=");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += other.values_[n];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_grid(grid(), other.grid(), "ScalarField::operator-=");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= other.values_[n];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField& ScalarField::axpy(double s, const ScalarField& other) {
    require_same_grid(grid(), other.grid(), "ScalarField::axpy");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += s * other.values_[n];
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "multiply");
    ScalarField out(a.grid_ptr());
    for (std::size_t n = 0; n < a.size(); ++n) out[n] = a[n] * b[n];
    return out;
}

VectorField::VectorField(GridPtr grid, double fill) : x_(grid, fill), y_(std::move(grid), fill) {}

VectorField::VectorField(ScalarField x, ScalarField y) : x_(std::move(x)), y_(std::move(y)) {
    require_same_grid(x_.grid(), y_.grid(), "VectorField");
}

VectorField& VectorField::operator+=(const VectorField& other) {
    x_ += other.x_;
    y_ += other.y_;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
    x_ -= other.x_;
    y_ -= other.y_;
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    x_ *= s;
    y_ *= s;
    return *this;
}

VectorField& VectorField::axpy(double s, const VectorField& other) {
    x_.axpy(s, other.x_);
    y_.axpy(s, other.y_);
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

VectorField multiply(const VectorField& v, const ScalarField& f) {
    return VectorField(multiply(v.x(), f), multiply(v.y(), f));
}

ScalarField dot(const VectorField& a, const VectorField& b) {
    require_same_grid(a.grid(), b.grid(), "dot");
    ScalarField out(a.grid_ptr());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = a.x()[n] * b.x()[n] + a.y()[n] * b.y()[n];
    return out;
}

double inner(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid(), g.grid(), "inner");
    double acc = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) acc += f[n] * g[n];
    return acc * f.grid().cell_area();
}

double inner(const VectorField& a, const VectorField& b) {
    return inner(a.x(), b.x()) + inner(a.y(), b.y());
}

double norm_l2(const ScalarField& f) { return std::sqrt(inner(f, f)); }
double norm_l2(const VectorField& v) { return std::sqrt(inner(v, v)); }

double mean(const ScalarField& f) {
    double acc = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) acc += f[n];
    return acc / static_cast<double>(f.size());
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) m = std::max(m, std::abs(f[n]));
    return m;
}

double max_abs(const VectorField& v) {
    double m = 0.0;
    for (std::size_t n = 0; n < v.x().size(); ++n)
        m = std::max(m, std::hypot(v.x()[n], v.y()[n]));
    return m;
}

}  // namespace chns
