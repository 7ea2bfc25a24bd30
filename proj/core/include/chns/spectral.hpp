#pragma once

#include <complex>
#include <vector>

#include "chns/field.hpp"

namespace chns {

/// Half-plane r2c spectrum of a real field: (ny) x (nx/2+1) complex modes,
/// row-major, unnormalized forward transform (plain sums).
using Spectrum = std::vector<std::complex<double>>;

/// Forward real-to-complex FFT. Thread-safe; plans are cached per grid shape.
Spectrum to_spectrum(const ScalarField& f);

/// Inverse transform including the 1/(nx*ny) normalization. Consumes its
/// argument (multi-d c2r transforms destroy their input).
ScalarField to_field(Spectrum spectrum, const GridPtr& grid);

}  // namespace chns
