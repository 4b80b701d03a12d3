#pragma once

#include "anisobec/problem.hpp"

#include <cstddef>
#include <vector>

namespace anisobec {

/// Uniform 3D grid in trap units, midpoint-offset so no sample sits on the
/// box edge or at the origin. Point counts must be powers of two (spectral
/// transforms). Storage is row-major with z fastest: index = (ix*ny + iy)*nz
/// + iz. For d = 1 the tight axes are x,y; for d = 2 the tight axis is z.
struct Grid {
  int nx = 0, ny = 0, nz = 0;
  double Lx = 0, Ly = 0, Lz = 0; // box half-widths, trap units

  std::size_t size() const {
    return static_cast<std::size_t>(nx) * ny * nz;
  }
  double dx() const { return 2.0 * Lx / nx; }
  double dy() const { return 2.0 * Ly / ny; }
  double dz() const { return 2.0 * Lz / nz; }
  double cell_volume() const { return dx() * dy() * dz(); }

  double x(int i) const { return -Lx + (i + 0.5) * dx(); }
  double y(int j) const { return -Ly + (j + 0.5) * dy(); }
  double z(int kk) const { return -Lz + (kk + 0.5) * dz(); }

  std::size_t index(int i, int j, int kk) const {
    return (static_cast<std::size_t>(i) * ny + j) * nz + kk;
  }

  /// Throws unless point counts are powers of two and the box covers at
  /// least 4 rho0 on each tight axis and 1.5 R_L0 on each loose axis.
  void validate(const ScaledProblem& sp) const;

  /// Default desk-scale grid: 64x64x512 for cigars, 256x256x64 for
  /// pancakes; box 6 rho0 transverse, 1.4 max(R_L0, 3 r0) longitudinal.
  static Grid make_default(const ScaledProblem& sp);

  /// Estimated working-set memory of a relaxation run on this grid.
  std::size_t estimated_bytes() const;
};

} // namespace anisobec
