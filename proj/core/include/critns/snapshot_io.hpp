#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "critns/field.hpp"

namespace critns {

/// CNSF binary snapshot: "CNSF", u16 version, u32 n, f64 l, u8 component count,
/// then each component as little-endian f64 physical samples, x1 fastest.
inline constexpr std::uint16_t kSnapshotVersion = 1;

struct Snapshot {
  Grid grid;
  std::vector<PhysicalField> components;
};

void write_snapshot(std::ostream& out, const Grid& grid, const std::vector<PhysicalField>& components);
Snapshot read_snapshot(std::istream& in);

void write_snapshot(const std::filesystem::path& path, const SpectralVectorField& u);
/// Reads a three-component snapshot into spectral form.
SpectralVectorField read_velocity_snapshot(const std::filesystem::path& path);

}  // namespace critns
