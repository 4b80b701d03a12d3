#include "anisobec/grid.hpp"

#include "anisobec/regimes.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace anisobec {

namespace {
bool power_of_two(int n) {
  return n > 0 && std::has_single_bit(static_cast<unsigned>(n));
}

double longitudinal_halfwidth(const ScaledProblem& sp) {
  const double R_L0 =
      sp.N > 1.0 ? detail::tf_radius_zero_scaled(sp) : 0.0;
  return std::max(1.5 * R_L0, 4.2 * sp.r0);
}
} // namespace

void Grid::validate(const ScaledProblem& sp) const {
  if (!power_of_two(nx) || !power_of_two(ny) || !power_of_two(nz))
    throw std::invalid_argument("Grid: point counts must be powers of two");
  if (!(Lx > 0 && Ly > 0 && Lz > 0))
    throw std::invalid_argument("Grid: box half-widths must be positive");
  const double R_L0 = sp.N > 1.0 ? detail::tf_radius_zero_scaled(sp) : 0.0;
  const double need_long = 1.5 * R_L0;
  const double tight = sp.d == 1 ? std::min(Lx, Ly) : Lz;
  const double loose = sp.d == 1 ? Lz : std::min(Lx, Ly);
  if (tight < 4.0 || loose * (1.0 + 1e-12) < need_long) {
    std::ostringstream msg;
    msg << "Grid: box too small (tight half-width " << tight
        << " rho0, need >= 4; loose half-width " << loose
        << " rho0, need >= 1.5 R_L0 = " << need_long << ")";
    throw std::invalid_argument(msg.str());
  }
}

Grid Grid::make_default(const ScaledProblem& sp) {
  Grid g;
  const double L_long = longitudinal_halfwidth(sp);
  if (sp.d == 1) {
    g.nx = g.ny = 64;
    g.nz = 512;
    g.Lx = g.Ly = 6.0;
    g.Lz = L_long;
  } else {
    g.nx = g.ny = 256;
    g.nz = 64;
    g.Lx = g.Ly = L_long;
    g.Lz = 6.0;
  }
  g.validate(sp);
  return g;
}

std::size_t Grid::estimated_bytes() const {
  // field + two scratch real arrays + spectral buffer, doubles
  const std::size_t n = size();
  const std::size_t spectral =
      static_cast<std::size_t>(nx) * ny * (nz / 2 + 1) * 2;
  return (3 * n + spectral) * sizeof(double);
}

} // namespace anisobec
