#pragma once

#include "anisobec/problem.hpp"

#include <span>
#include <vector>

namespace anisobec::variational {

/// TF-regime perturbative solution of the Gaussian-width variational
/// model. All quantities in trap units.
struct VariationalSolution {
  int d = 1;
  double a_tilde = 0;     // a (N - 1)
  double omega_L = 0;
  double R_dL = 0;        // longitudinal TF length (d=1) / radius (d=2)
  double R_dL_leading = 0; // root with the quintic/sextic term dropped
  double mu_dL = 0;       // M omega_L^2 R_dL^2 / 2
  double mu_d = 0;        // mu_dL + transverse zero-point energy
  bool regime_warning = false; // perturbative expansion marginal

  /// |f_d|^2 at longitudinal radius r (0 outside R_dL).
  double f_sq(double r) const;
  /// Local transverse Gaussian width sigma_d(r) >= rho0 = 1.
  double sigma(double r) const;
};

/// Quasi-1D (cigar) solution. Harmonic traps only.
VariationalSolution solve_quasi1d(const ScaledProblem& sp);

/// Quasi-2D (pancake) solution. Harmonic traps only.
VariationalSolution solve_quasi2d(const ScaledProblem& sp);

/// Longitudinal reduced density matrix kernel n_L(r_i, r_j) on the sample
/// set. For d = 2 the samples are radii and the purity integral carries
/// the (2 pi r) measure.
std::vector<std::vector<double>>
variational_density_matrix(const VariationalSolution& sol,
                           std::span<const double> samples);

struct Observables {
  double purity = 1.0;
  double N_eta = 0.0; // trap units (1/rho0^3)
};

/// Purity by double quadrature of the kernel and average density
/// N int |psi_d|^4 with the transverse Gaussian integrated analytically.
Observables variational_observables(const VariationalSolution& sol,
                                    double N, int n_quad = 2048);

} // namespace anisobec::variational
