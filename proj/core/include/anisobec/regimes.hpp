#pragma once

#include "anisobec/problem.hpp"

#include <string_view>
#include <utility>

namespace anisobec {

enum class Regime { BelowTF, ReducedDim, Crossover };

std::string_view to_string(Regime r);

/// Derived scales classifying the reduced-dimension regime. Lengths in SI.
struct RegimeReport {
  double rho0;       // transverse oscillator length [m]
  double r0;         // longitudinal characteristic length [m]
  double N_L;        // lower critical atom number
  double N_T;        // upper critical atom number
  double epsilon;    // physical expansion parameter at N
  double R_L0;       // zero-order longitudinal TF radius at N [m]
  double R_L0_at_NT; // same, evaluated at N = N_T [m]
  Regime regime_label;
};

/// Bare-trap widths (rho0, r0) in meters.
std::pair<double, double> oscillator_lengths(const TrapSpec& trap,
                                             const AtomSpecies& species);

/// N_L: atom number at which the scattering energy matches the longitudinal
/// kinetic energy. Harmonic longitudinal trap (q = 2) only.
double lower_critical_N(const ProblemSpec& spec);

/// N_T: atom number at which the scattering energy matches the transverse
/// kinetic energy. Harmonic traps only.
double upper_critical_N(const ProblemSpec& spec);

/// Physical dimensionless expansion parameter epsilon(N).
double expansion_parameter(const ProblemSpec& spec);

/// Zero-order longitudinal TF radius R_L0 and its value at N = N_T, in
/// meters. Requires N > 1.
struct TfRadii {
  double R_L0;
  double R_L0_at_NT;
};
TfRadii tf_radius_zero(const ProblemSpec& spec);

RegimeReport classify(const ProblemSpec& spec);

namespace detail {

/// Closed-form Upsilon_T hbar omega_T / eta_T^2 for harmonic transverse
/// traps: (1/2) ln(4/3) for d = 1, ln(8 - 4 sqrt(3)) for d = 2.
double upsilon_hat(int d);

/// R_L0 in trap units for general power-law longitudinal traps.
double tf_radius_zero_scaled(const ScaledProblem& sp);

double lower_critical_N(const ScaledProblem& sp);
double upper_critical_N(const ScaledProblem& sp);
double expansion_parameter(const ScaledProblem& sp);

} // namespace detail

} // namespace anisobec
