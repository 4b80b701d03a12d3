#include "anisobec/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace anisobec::io {

namespace {

constexpr char kMagic[8] = {'A', 'B', 'E', 'C', 'F', 'L', 'D', '1'};
constexpr std::uint32_t kEndianTag = 0x01020304u;

template <typename T> void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T> T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is)
    throw std::runtime_error("field file truncated");
  return v;
}

} // namespace

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

void write_field(const std::filesystem::path& path, const Grid& grid,
                 const std::vector<double>& psi, std::uint64_t spec_hash) {
  if (psi.size() != grid.size())
    throw std::invalid_argument("write_field: field size does not match grid");
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("write_field: cannot open " + path.string());
  os.write(kMagic, sizeof(kMagic));
  put(os, kEndianTag);
  put(os, static_cast<std::uint32_t>(grid.nx));
  put(os, static_cast<std::uint32_t>(grid.ny));
  put(os, static_cast<std::uint32_t>(grid.nz));
  put(os, grid.Lx);
  put(os, grid.Ly);
  put(os, grid.Lz);
  put(os, spec_hash);
  os.write(reinterpret_cast<const char*>(psi.data()),
           static_cast<std::streamsize>(psi.size() * sizeof(double)));
  if (!os)
    throw std::runtime_error("write_field: write failed for " + path.string());
}

FieldFile read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw std::runtime_error("read_field: cannot open " + path.string());
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("read_field: bad magic in " + path.string());
  if (get<std::uint32_t>(is) != kEndianTag)
    throw std::runtime_error("read_field: endianness mismatch");
  FieldFile f;
  f.grid.nx = static_cast<int>(get<std::uint32_t>(is));
  f.grid.ny = static_cast<int>(get<std::uint32_t>(is));
  f.grid.nz = static_cast<int>(get<std::uint32_t>(is));
  f.grid.Lx = get<double>(is);
  f.grid.Ly = get<double>(is);
  f.grid.Lz = get<double>(is);
  f.spec_hash = get<std::uint64_t>(is);
  if (f.grid.nx <= 0 || f.grid.ny <= 0 || f.grid.nz <= 0 ||
      f.grid.size() > (1ull << 30))
    throw std::runtime_error("read_field: implausible grid dimensions");
  f.psi.resize(f.grid.size());
  is.read(reinterpret_cast<char*>(f.psi.data()),
          static_cast<std::streamsize>(f.psi.size() * sizeof(double)));
  if (!is)
    throw std::runtime_error("read_field: truncated field data");
  return f;
}

VerifyReport verify_field(const FieldFile& f) {
  const Grid& g = f.grid;
  VerifyReport rep;
  double nsq = 0.0;
  for (double v : f.psi)
    nsq += v * v;
  rep.norm = std::sqrt(nsq * g.cell_volume());
  // the midpoint grid maps x -> -x onto i -> n - 1 - i, so the ground
  // state must be invariant under index reversal along every axis
  double asym = 0.0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      for (int kk = 0; kk < g.nz; ++kk) {
        const double v = f.psi[g.index(i, j, kk)];
        asym = std::max(
            asym, std::abs(v - f.psi[g.index(g.nx - 1 - i, j, kk)]));
        asym = std::max(
            asym, std::abs(v - f.psi[g.index(i, g.ny - 1 - j, kk)]));
        asym = std::max(
            asym, std::abs(v - f.psi[g.index(i, j, g.nz - 1 - kk)]));
      }
  rep.max_asymmetry = asym;
  rep.ok = std::abs(rep.norm - 1.0) < 1e-8 && asym < 1e-6;
  return rep;
}

} // namespace anisobec::io
