#pragma once

#include "anisobec/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace anisobec::io {

/// Binary ground-state field file.
/// Layout (little/big endian detected via the tag):
///   char[8]  magic "ABECFLD1"
///   u32      endianness tag 0x01020304
///   u32      dims nx, ny, nz
///   f64      box half-widths Lx, Ly, Lz (trap units)
///   u64      spec hash (FNV-1a of the canonical config serialization)
///   f64[nx*ny*nz] field, row-major, z fastest
struct FieldFile {
  Grid grid;
  std::uint64_t spec_hash = 0;
  std::vector<double> psi;
};

void write_field(const std::filesystem::path& path, const Grid& grid,
                 const std::vector<double>& psi, std::uint64_t spec_hash);

FieldFile read_field(const std::filesystem::path& path);

struct VerifyReport {
  double norm = 0;          // quadrature L2 norm
  double max_asymmetry = 0; // max |psi(x) - psi(-x)| over axis reflections
  bool ok = false;          // norm within 1e-8 of 1, asymmetry < 1e-6
};
VerifyReport verify_field(const FieldFile& f);

/// FNV-1a 64-bit, used for config/spec hashes.
std::uint64_t fnv1a(std::string_view s);

} // namespace anisobec::io
