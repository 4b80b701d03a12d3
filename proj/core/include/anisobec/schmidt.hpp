#pragma once

#include "anisobec/grid.hpp"
#include "anisobec/problem.hpp"

#include <span>
#include <vector>

namespace anisobec::schmidt {

inline constexpr int kDefaultModeCutoff = 60;

/// Geometry-renormalized coupling constants, trap units (hbar = M =
/// omega_T = 1, lengths in rho0).
struct GeometryConstants {
  double eta_T;        // <xi0|xi0^3>, inverse transverse volume
  double eta_L;        // <phi00|phi00^3>, inverse longitudinal volume
  double delta_eta_L;  // sqrt(<phi00^3|phi00^3> - eta_L^2)
  double upsilon_T;    // mode sum sum_n <xi_n|xi0^3>^2 / (E_n - E0)
  double g_eta_T;      // g eta_T (per-atom transverse coupling)
  double three_body_coupling; // 3 g^2 Upsilon_T
  double combo_con;    // g~ eta_T eta_L (dimensionless in trap units)
};

/// Closed-form constants for the harmonic transverse trap; eta_L and
/// delta_eta_L use the harmonic closed forms for q = 2 and quadrature over
/// the longitudinal TF profile otherwise. Requires N > 1.
GeometryConstants geometry_constants(const ScaledProblem& sp);

/// Partial sum of the Upsilon_T mode series, for cross-checking the closed
/// form. n_max >= 2.
double upsilon_series(const ScaledProblem& sp, int n_max);

enum class RLMode { Exact, FirstOrder };

struct RLResult {
  double R_L;  // longitudinal TF length/radius, rho0 units
  double mu_L; // k R_L^q / 2, hbar omega_T units
};

/// Longitudinal TF radius from the normalization condition. Exact mode
/// finds the root by bracketed bisection+secant to relative tolerance
/// 1e-12 around [R_L0/2, 2 R_L0]; FirstOrder returns R_L0 + R_L1.
RLResult solve_RL(const ScaledProblem& sp, RLMode mode);

/// Zero-order pieces, exposed so tests can inspect each order.
struct RLZero {
  double R_L0;
  double mu_L0;
  double R_L1_over_R_L0; // first-order relative shift (negative)
};
RLZero rl_zero_order(const ScaledProblem& sp);

enum class MuMode { ExactRL, FirstOrder };

/// Total chemical potential mu = E0 + mu_L with E0 = (D/2) hbar omega_T.
/// ExactRL evaluates mu_L on the exact root; FirstOrder uses the
/// linearized first-order formula.
double chemical_potential(const ScaledProblem& sp, MuMode mode);

struct LongitudinalProfiles {
  std::vector<double> r;          // sample radii, rho0 units
  std::vector<double> phi0_sq;    // first-order TF profile
  std::vector<double> phi00_sq;   // zero-order TF profile
  std::vector<double> phi1;       // second longitudinal Schmidt function
  std::vector<double> eta_T_rect; // rectified eta_T(r)
  bool below_tf_warning = false;  // N < N_L: TF profiles unreliable
};
LongitudinalProfiles longitudinal_profiles(const ScaledProblem& sp,
                                           std::span<const double> r_samples);

enum class TransverseBasis { Hermite1D, RadialLaguerre2D };

/// Expansion over bare transverse eigenmodes (Hermite for D = 1, zero
/// angular momentum Laguerre modes for D = 2). Coefficients follow the
/// convention in which chi_n absorbs sqrt(lambda_n).
struct ModeExpansion {
  std::vector<double> coefficients; // index n (Hermite) or n_r (Laguerre)
  TransverseBasis basis;

  /// Value at transverse radius (D = 2) or coordinate (D = 1), rho0 units.
  double evaluate(double rho) const;
  double norm_sq() const;
};

struct TransverseSchmidt {
  ModeExpansion chi0;
  ModeExpansion chi1;
  double lambda1; // <chi1|chi1>
};
TransverseSchmidt transverse_schmidt(const ScaledProblem& sp,
                                     int n_max = kDefaultModeCutoff);

/// lambda_1 closed form: a^2 (N-1)^2 DeltaEtaL^2 x {Li_2(1/4) (d=1);
/// (pi/4) 4F3(1,1,1,3/2;2,2,2;1/4) (d=2)}.
double lambda1_closed(const ScaledProblem& sp);

/// Pi = 1 - 2 lambda_1, clamped to [0, 1].
double purity_first_order(const ScaledProblem& sp);

struct AverageDensity {
  double N_eta_full;       // both Schmidt terms, first order
  double N_eta_dominant;   // dominant Schmidt term alone
  double N_eta_zero_order; // N eta_T eta_L
};
/// Trap-unit densities (1/rho0^3); multiply by a/rho0 for the
/// (rho0^2 a)^{-1} units used in reporting.
AverageDensity average_density(const ScaledProblem& sp);

/// All first-order Schmidt-perturbation outputs in one bundle.
struct ReducedModel {
  double R_L;              // exact root
  double R_L_first_order;  // R_L0 + R_L1
  double R_L0;
  double mu_L;             // on the exact root
  double mu_L_first_order; // linearized formula
  double mu_total;         // E0 + mu_L (exact-root path)
  double lambda1;
  double purity;
  double eta;              // first-order average density per atom
  double eta_dominant;     // dominant-term-only estimate
  double eta_L_tilde;      // eta_L (R_L/R_L0)^{2q+d}
  GeometryConstants geometry;
  LongitudinalProfiles profiles;
  TransverseSchmidt transverse;
};
ReducedModel reduced_model(const ScaledProblem& sp,
                           int n_profile_samples = 256,
                           int n_max = kDefaultModeCutoff);

/// First-order Schmidt wave function sqrt(lambda0) chi0 phi0 + chi1 phi1
/// sampled on the grid and renormalized to unit quadrature norm. The grid
/// must cover >= 4 rho0 transversely and >= 1.5 R_L longitudinally.
std::vector<double> assemble_wavefunction(const ScaledProblem& sp,
                                          const Grid& grid,
                                          int n_max = kDefaultModeCutoff);

} // namespace anisobec::schmidt
