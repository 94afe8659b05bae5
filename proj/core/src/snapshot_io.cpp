#include "critns/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "critns/error.hpp"

namespace critns {

namespace {

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

template <class T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in, const char* what) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw FormatError(std::string("CNSF: truncated header field '") + what + "'");
  }
  return to_little(v);
}

}  // namespace

void write_snapshot(std::ostream& out, const Grid& grid, const std::vector<PhysicalField>& components) {
  if (components.size() > 255) throw InvalidArgument("CNSF: at most 255 components");
  out.write("CNSF", 4);
  put<std::uint16_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.n()));
  put<double>(out, grid.period());
  put<std::uint8_t>(out, static_cast<std::uint8_t>(components.size()));
  for (const auto& c : components) {
    require_same_grid(grid, c.grid(), "write_snapshot");
    if constexpr (std::endian::native == std::endian::little) {
      out.write(reinterpret_cast<const char*>(c.samples().data()),
                static_cast<std::streamsize>(c.size() * sizeof(double)));
    } else {
      for (double v : c.samples()) put<double>(out, v);
    }
  }
  if (!out) throw Error("CNSF: write failed");
}

Snapshot read_snapshot(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "CNSF", 4) != 0) throw FormatError("CNSF: bad magic bytes");
  const auto version = get<std::uint16_t>(in, "version");
  if (version != kSnapshotVersion) throw FormatError("CNSF: unsupported version " + std::to_string(version));
  const auto n = get<std::uint32_t>(in, "n");
  const auto l = get<double>(in, "l");
  const auto count = get<std::uint8_t>(in, "component count");
  Grid grid = [&] {
    try {
      return Grid(n, l);
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("CNSF: invalid grid: ") + e.what());
    }
  }();
  Snapshot snap{grid, {}};
  for (std::uint8_t c = 0; c < count; ++c) {
    PhysicalField f(grid);
    auto s = f.samples();
    if (!in.read(reinterpret_cast<char*>(s.data()), static_cast<std::streamsize>(s.size() * sizeof(double)))) {
      throw FormatError("CNSF: truncated sample data in component " + std::to_string(c));
    }
    for (double& v : s) v = to_little(v);
    snap.components.push_back(std::move(f));
  }
  return snap;
}

void write_snapshot(const std::filesystem::path& path, const SpectralVectorField& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  const PhysicalVectorField p = u.to_physical();
  write_snapshot(out, u.grid(), {p[0], p[1], p[2]});
}

SpectralVectorField read_velocity_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  Snapshot snap = read_snapshot(in);
  if (snap.components.size() != 3) {
    throw DimensionMismatch("CNSF: expected 3 velocity components, found " +
                            std::to_string(snap.components.size()));
  }
  return SpectralVectorField::from_physical({snap.components[0], snap.components[1], snap.components[2]});
}

}  // namespace critns
