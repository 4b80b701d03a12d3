#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace anisobec {

namespace constants {
// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double bohr_radius = 5.29177210903e-11;      // m
} // namespace constants

/// Atom species, SI units. Repulsive condensates only (a > 0).
struct AtomSpecies {
  double mass;              // kg
  double scattering_length; // m

  /// 87Rb in |F=1, m_F=-1>: mass 86.909 u, a = 100.4 a0.
  static AtomSpecies rubidium87() {
    return {86.909 * constants::atomic_mass_unit,
            100.4 * constants::bohr_radius};
  }

  void validate() const {
    if (!(mass > 0.0))
      throw std::invalid_argument("AtomSpecies: mass must be > 0");
    if (!(scattering_length > 0.0))
      throw std::invalid_argument(
          "AtomSpecies: scattering length must be > 0 (repulsive only)");
  }
};

/// Anisotropic trap: tight harmonic transverse confinement in D = 3 - d
/// axes, loose power-law longitudinal potential (1/2) k |r|^q in d axes.
struct TrapSpec {
  double omega_T; // rad/s, transverse (tight)
  double omega_L; // rad/s, longitudinal (loose); defines k for q = 2
  int d = 1;      // longitudinal dimension count, 1 (cigar) or 2 (pancake)
  double q = 2.0; // longitudinal power-law exponent
  double k = 0.0; // J/m^q; 0 means "derive from omega_L" (valid for q = 2)

  int transverse_dims() const { return 3 - d; }

  /// Longitudinal stiffness. For q = 2 defaults to M omega_L^2.
  double stiffness(const AtomSpecies& species) const {
    if (k > 0.0)
      return k;
    if (q != 2.0)
      throw std::invalid_argument(
          "TrapSpec: stiffness k must be given explicitly for q != 2");
    return species.mass * omega_L * omega_L;
  }

  void validate() const {
    if (!(omega_T > 0.0) || !(omega_L > 0.0) || !(omega_T > omega_L))
      throw std::invalid_argument("TrapSpec: need omega_T > omega_L > 0");
    if (d != 1 && d != 2)
      throw std::invalid_argument("TrapSpec: d must be 1 or 2");
    if (!(q > 0.0))
      throw std::invalid_argument("TrapSpec: q must be > 0");
    if (k < 0.0)
      throw std::invalid_argument("TrapSpec: k must be >= 0");
  }
};

/// Everything expressed in trap units: hbar = M = omega_T = 1, so lengths
/// are in units of rho0 = sqrt(hbar / M omega_T) and energies in hbar
/// omega_T. All analytic formulas operate on this form; SI conversion
/// happens only at the API boundary (see ProblemSpec::scaled()).
struct ScaledProblem {
  int d;          // longitudinal dimensions
  int D;          // transverse dimensions, 3 - d
  double q;       // longitudinal power-law exponent
  double N;       // atom number (real-valued in formula paths)
  double a;       // scattering length / rho0
  double omega_L; // longitudinal frequency / omega_T
  double r0;      // longitudinal characteristic length / rho0
  double k;       // longitudinal stiffness, hbar omega_T / rho0^q

  // conversion factors back to SI
  double rho0_si;    // m
  double omega_T_si; // rad/s

  bool harmonic() const { return q == 2.0; }

  /// Interaction strength g~ = (N - 1) 4 pi a in trap units.
  double g_tilde() const { return (N - 1.0) * 4.0 * std::numbers::pi * a; }

  double energy_si(double e) const {
    return e * constants::hbar * omega_T_si;
  }
  double length_si(double l) const { return l * rho0_si; }
};

/// Full physical problem: species + trap + atom number. The single source
/// of physical truth; everything downstream derives from it.
struct ProblemSpec {
  AtomSpecies species;
  TrapSpec trap;
  double atom_number = 1.0; // >= 1; fractional values allowed in sweeps

  void validate() const {
    species.validate();
    trap.validate();
    if (!(atom_number >= 1.0))
      throw std::invalid_argument("ProblemSpec: atom number must be >= 1");
  }

  /// Nondimensionalize into trap units.
  ScaledProblem scaled() const {
    validate();
    const double rho0 =
        std::sqrt(constants::hbar / (species.mass * trap.omega_T));
    const double k_si = trap.stiffness(species);
    ScaledProblem sp;
    sp.d = trap.d;
    sp.D = 3 - trap.d;
    sp.q = trap.q;
    sp.N = atom_number;
    sp.a = species.scattering_length / rho0;
    sp.omega_L = trap.omega_L / trap.omega_T;
    // k in units of hbar omega_T / rho0^q
    sp.k = k_si * std::pow(rho0, trap.q) / (constants::hbar * trap.omega_T);
    // r0 = (hbar^2 / M k)^{1/(2+q)} -> (1/k)^{1/(2+q)} in trap units
    sp.r0 = std::pow(1.0 / sp.k, 1.0 / (2.0 + trap.q));
    sp.rho0_si = rho0;
    sp.omega_T_si = trap.omega_T;
    return sp;
  }
};

} // namespace anisobec
