#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chns/field.hpp"
#include "chns/operators.hpp"

namespace chns {

struct GaussianKernelSpec {
    double sigma = 0.5;
    /// Integral of the kernel over the torus, i.e. the value of a = J*1.
    double strength = 1.0;
};

/// Discrete delta: J*f = f, a = 1.
struct DeltaKernelSpec {};

/// Arbitrary even grid samples of J.
struct CustomKernelSpec {
    std::vector<double> samples;
};

using KernelShape = std::variant<GaussianKernelSpec, DeltaKernelSpec, CustomKernelSpec>;

enum class KernelMode { translation_invariant, synthetic_a };

/// Convolution kernel J plus the coefficient field a and its gradient.
///
/// On the torus a translation-invariant J gives a == sum(J) h^2 exactly, so
/// grad_a vanishes. The synthetic_a mode substitutes an arbitrary smooth
/// periodic a(x) (decoupled from J) so that every grad-a term in the forward,
/// tangent, adjoint and second-order operators is exercised; all modules use
/// the same a consistently.
class Kernel {
  public:
    Kernel(GridPtr grid, ScalarField samples, std::vector<double> symbol, ScalarField a,
           VectorField grad_a, KernelMode mode);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const ScalarField& samples() const { return samples_; }
    /// Fourier multiplier of f -> J*f (real since J is even).
    const std::vector<double>& symbol() const { return symbol_; }
    const ScalarField& a() const { return a_; }
    const VectorField& grad_a() const { return grad_a_; }
    KernelMode mode() const { return mode_; }
    double a_mean() const { return a_mean_; }
    double a_min() const { return a_min_; }
    bool translation_invariant() const { return mode_ == KernelMode::translation_invariant; }

  private:
    GridPtr grid_;
    ScalarField samples_;
    std::vector<double> symbol_;
    ScalarField a_;
    VectorField grad_a_;
    KernelMode mode_;
    double a_mean_ = 0.0, a_min_ = 0.0;
};

/// Build a kernel from a shape spec; a synthetic a(x) field may replace the
/// translation-invariant a = sum(J) h^2. Rejects asymmetric custom samples
/// and any a that is negative somewhere.
Kernel build_kernel(const KernelShape& shape, const GridPtr& grid,
                    std::optional<ScalarField> synthetic_a = std::nullopt);

/// Periodic convolution (J*f)(x) = sum_y J(x-y) f(y) h^2, evaluated
/// spectrally; agrees with the direct quadrature to machine precision.
ScalarField convolve(const Kernel& kernel, const ScalarField& f);

/// grad(J*f) = (grad J)*f on the torus.
VectorField grad_convolve(const Kernel& kernel, const ScalarField& f);

}  // namespace chns
