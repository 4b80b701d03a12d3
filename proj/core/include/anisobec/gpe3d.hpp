#pragma once

#include "anisobec/grid.hpp"
#include "anisobec/problem.hpp"

#include <span>
#include <vector>

namespace anisobec::gpe {

/// Imaginary-time relaxation controls (trap units). The final stage runs
/// at dt; when coarse_stages is set, a stage at a larger step runs first
/// so slow longitudinal modes relax cheaply before the fine-step polish.
/// Convergence is judged on the drift of mu per unit imaginary time,
/// sampled once per time unit; a per-step test would never trigger for
/// weak longitudinal traps, where mu creeps for hundreds of time units.
struct Numerics {
  double dt = 0.05;
  double tol = 1e-7;       // relative mu drift per unit time, final stage
  long max_iters = 200000; // total across stages
  long fixed_iters = 0;    // if > 0, exactly this many steps at dt (no
                           // convergence test): deterministic-output mode
  bool coarse_stages = true;
};

struct EnergyParts {
  double kinetic_T = 0;
  double kinetic_L = 0;
  double potential_T = 0;
  double potential_L = 0;
  double interaction = 0; // (g~/2) int psi^4

  double total() const {
    return kinetic_T + kinetic_L + potential_T + potential_L + interaction;
  }
};

struct GroundState {
  std::vector<double> psi; // unit L2 norm under midpoint quadrature
  double mu = 0;           // E_kin + E_pot + 2 E_int
  EnergyParts energy_parts;
  double residual = 0; // last relative mu drift per unit time
  long iterations = 0;
  bool converged = false;
};

/// Split-step imaginary-time relaxation of the 3D GP equation: half-step
/// kinetic in spectral space, full-step potential + nonlinearity in
/// position space, half-step kinetic, renormalizing after every step.
/// Throws on non-convergence or NaN.
GroundState relax_ground_state(const ScaledProblem& sp, const Grid& grid,
                               const Numerics& numerics = {});

/// mu = int psi (H_T + H_L + g~ psi^2) psi, evaluated in position space
/// with spectral derivatives. Independent arithmetic route from the
/// energy-parts bookkeeping inside relax_ground_state.
double chemical_potential_of(const GroundState& state,
                             const ScaledProblem& sp, const Grid& grid);

/// GP energy functional E[psi]; non-increasing along imaginary time.
double gp_energy(std::span<const double> psi, const ScaledProblem& sp,
                 const Grid& grid);

EnergyParts energy_parts_of(std::span<const double> psi,
                            const ScaledProblem& sp, const Grid& grid);

/// Average density N eta = N int |psi|^4 (trap units).
double average_density_of(const GroundState& state, const Grid& grid,
                          double N);

struct SchmidtSpectrum {
  std::vector<double> lambdas; // descending, sums to 1
  // leading orthonormal modes, unweighted samples on the grid slices
  std::vector<std::vector<double>> chi_modes; // transverse
  std::vector<std::vector<double>> phi_modes; // longitudinal
};

/// Quadrature-weighted SVD of psi reshaped into (transverse points) x
/// (longitudinal points); singular values squared are the Schmidt
/// coefficients. d decides the axis split (d = 1: tight x,y; d = 2: tight
/// z).
SchmidtSpectrum schmidt_decompose(const GroundState& state,
                                  const ScaledProblem& sp, const Grid& grid,
                                  int max_modes = 8);

struct PurityReport {
  double purity = 1.0;           // sum lambda_n^2
  double lambda1_estimate = 0.0; // second Schmidt coefficient
};
PurityReport purity_of(const SchmidtSpectrum& spectrum);

} // namespace anisobec::gpe
