#pragma once

#include "chns/field.hpp"
#include "chns/spectral.hpp"

namespace chns {

/// Spectral gradient; each component has exactly zero mean.
VectorField grad(const ScalarField& f);

/// Spectral divergence.
ScalarField div(const VectorField& v);

/// Spectral Laplacian, identical to div(grad f) mode by mode.
ScalarField laplacian(const ScalarField& f);

/// Helmholtz-Hodge (Leray) projection onto divergence-free fields.
/// Orthogonal, idempotent, self-adjoint w.r.t. inner(); the mean flow
/// (k = 0 mode) passes through unchanged.
VectorField leray_project(const VectorField& v);

/// 2/3-rule dealiasing: zero all modes with |kx| or |ky| above 2/3 Nyquist.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

/// Solve (1 - coef * Laplacian) u = f spectrally (coef >= 0).
ScalarField helmholtz_solve(const ScalarField& f, double coef);
VectorField helmholtz_solve(const VectorField& f, double coef);

/// Physical-space inner product evaluated in spectral space; used by the
/// Parseval consistency checks.
double spectral_inner(const ScalarField& f, const ScalarField& g);

namespace detail {
/// True if half-plane mode (ki,kj) survives the 2/3 rule.
bool mode_kept(const Grid& g, std::size_t ki, std::size_t kj);
void dealias_spectrum(const Grid& g, Spectrum& s);
}  // namespace detail

}  // namespace chns
