#pragma once

#include <filesystem>
#include <string>

#include "chns/field.hpp"

namespace chns {

/// Binary field snapshot. Layout, all little-endian:
///   bytes 0..3   magic "CHNS"
///   u32          format version (currently 1)
///   u32 u32      nx, ny
///   u32          component count (1 scalar, 2 vector)
///   f64          time stamp
///   f64[...]     row-major values per component
/// Round trips are bit-identical.
inline constexpr std::uint32_t snapshot_format_version = 1;

void save_snapshot(const ScalarField& f, double time, const std::filesystem::path& path);
void save_snapshot(const VectorField& v, double time, const std::filesystem::path& path);

struct RawSnapshot {
    std::uint32_t nx = 0, ny = 0, components = 0;
    double time = 0.0;
    std::vector<double> values;  ///< components concatenated
};

/// Read and validate a snapshot header + payload.
RawSnapshot load_snapshot(const std::filesystem::path& path);

/// Bind a raw snapshot to a grid (component count must match).
ScalarField to_scalar(const RawSnapshot& raw, const GridPtr& grid);
VectorField to_vector(const RawSnapshot& raw, const GridPtr& grid);

}  // namespace chns
