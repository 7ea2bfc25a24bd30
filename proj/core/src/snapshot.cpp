#include "chns/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace chns {

static_assert(std::endian::native == std::endian::little,
              "snapshot IO assumes a little-endian host");

namespace {

constexpr char magic[4] = {'C', 'H', 'N', 'S'};

void write_u32(std::ofstream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_f64(std::ofstream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_header(std::ofstream& out, const Grid& grid, std::uint32_t components, double time) {
    out.write(magic, sizeof magic);
    write_u32(out, snapshot_format_version);
    write_u32(out, static_cast<std::uint32_t>(grid.nx()));
    write_u32(out, static_cast<std::uint32_t>(grid.ny()));
    write_u32(out, components);
    write_f64(out, time);
}

void write_payload(std::ofstream& out, const std::vector<double>& values) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("save_snapshot: cannot open " + path.string());
    return out;
}

}  // namespace

void save_snapshot(const ScalarField& f, double time, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    write_header(out, f.grid(), 1, time);
    write_payload(out, f.data());
    if (!out) throw std::runtime_error("save_snapshot: write failed for " + path.string());
}

void save_snapshot(const VectorField& v, double time, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    write_header(out, v.grid(), 2, time);
    write_payload(out, v.x().data());
    write_payload(out, v.y().data());
    if (!out) throw std::runtime_error("save_snapshot: write failed for " + path.string());
}

RawSnapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_snapshot: cannot open " + path.string());

    char got_magic[4];
    in.read(got_magic, sizeof got_magic);
    if (!in || std::memcmp(got_magic, magic, sizeof magic) != 0)
        throw std::runtime_error("load_snapshot: magic mismatch in " + path.string());

    std::uint32_t version = 0;
    RawSnapshot raw;
    auto read_u32 = [&](std::uint32_t& v) { in.read(reinterpret_cast<char*>(&v), sizeof v); };
    read_u32(version);
    read_u32(raw.nx);
    read_u32(raw.ny);
    read_u32(raw.components);
    in.read(reinterpret_cast<char*>(&raw.time), sizeof raw.time);
    if (!in) throw std::runtime_error("load_snapshot: truncated header in " + path.string());
    if (version != snapshot_format_version)
        throw std::runtime_error("load_snapshot: unsupported format version " +
                                 std::to_string(version) + " in " + path.string());
    if (raw.components != 1 && raw.components != 2)
        throw std::runtime_error("load_snapshot: bad component count in " + path.string());

    const std::size_t count =
        static_cast<std::size_t>(raw.nx) * raw.ny * raw.components;
    raw.values.resize(count);
    in.read(reinterpret_cast<char*>(raw.values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double))
        throw std::runtime_error("load_snapshot: payload shorter than header claims in " +
                                 path.string());
    return raw;
}

namespace {
void check_grid(const RawSnapshot& raw, const Grid& grid, std::uint32_t components) {
    if (raw.components != components)
        throw std::runtime_error("snapshot: component count mismatch");
    if (raw.nx != grid.nx() || raw.ny != grid.ny())
        throw std::runtime_error("snapshot: grid shape mismatch");
}
}  // namespace

ScalarField to_scalar(const RawSnapshot& raw, const GridPtr& grid) {
    check_grid(raw, *grid, 1);
    return ScalarField(grid, raw.values);
}

VectorField to_vector(const RawSnapshot& raw, const GridPtr& grid) {
    check_grid(raw, *grid, 2);
    const std::size_t n = grid->size();
    std::vector<double> x(raw.values.begin(), raw.values.begin() + static_cast<long>(n));
    std::vector<double> y(raw.values.begin() + static_cast<long>(n), raw.values.end());
    return VectorField(ScalarField(grid, std::move(x)), ScalarField(grid, std::move(y)));
}

}  // namespace chns
