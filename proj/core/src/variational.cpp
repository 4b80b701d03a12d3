#include "anisobec/variational.hpp"

#include "anisobec/root_finding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anisobec::variational {

using std::numbers::pi;

namespace {
void require_harmonic(const ScaledProblem& sp) {
  if (!sp.harmonic())
    throw std::domain_error(
        "variational: the Gaussian ansatz solutions assume harmonic traps");
}
} // namespace

double VariationalSolution::f_sq(double r) const {
  const double mu_minus_V = mu_dL - 0.5 * omega_L * omega_L * r * r;
  if (mu_minus_V <= 0.0)
    return 0.0;
  if (d == 1) {
    const double u = mu_minus_V / (2.0 * a_tilde);
    return u + 0.75 * a_tilde * u * u;
  }
  const double v = mu_minus_V / (2.0 * std::sqrt(2.0 * pi) * a_tilde);
  return v + 3.0 * std::sqrt(pi) * a_tilde / (4.0 * std::sqrt(2.0)) * v * v;
}

double VariationalSolution::sigma(double r) const {
  const double fs = f_sq(r);
  if (d == 1)
    return std::pow(1.0 + 2.0 * a_tilde * fs, 0.25);
  return 1.0 + std::sqrt(pi / 2.0) * a_tilde * fs;
}

VariationalSolution solve_quasi1d(const ScaledProblem& sp) {
  require_harmonic(sp);
  if (sp.d != 1)
    throw std::invalid_argument("solve_quasi1d: requires d = 1");
  if (!(sp.N > 1.0))
    throw std::domain_error("solve_quasi1d: N <= 1 has no TF solution");
  VariationalSolution sol;
  sol.d = 1;
  sol.a_tilde = sp.a * (sp.N - 1.0);
  sol.omega_L = sp.omega_L;
  const double w2 = sp.omega_L * sp.omega_L;
  const double c3 = w2 / (3.0 * sol.a_tilde);
  const double c5 = w2 * w2 / (20.0 * sol.a_tilde);
  sol.R_dL_leading = std::pow(1.0 / c3, 1.0 / 3.0);
  sol.R_dL = find_root(
      [&](double R) {
        return c3 * R * R * R + c5 * std::pow(R, 5.0) - 1.0;
      },
      0.5 * sol.R_dL_leading, 2.0 * sol.R_dL_leading, 1e-14);
  sol.mu_dL = 0.5 * w2 * sol.R_dL * sol.R_dL;
  sol.mu_d = sol.mu_dL + 1.0;
  sol.regime_warning = sol.a_tilde * sol.f_sq(0.0) > 0.3;
  return sol;
}

VariationalSolution solve_quasi2d(const ScaledProblem& sp) {
  require_harmonic(sp);
  if (sp.d != 2)
    throw std::invalid_argument("solve_quasi2d: requires d = 2");
  if (!(sp.N > 1.0))
    throw std::domain_error("solve_quasi2d: N <= 1 has no TF solution");
  VariationalSolution sol;
  sol.d = 2;
  sol.a_tilde = sp.a * (sp.N - 1.0);
  sol.omega_L = sp.omega_L;
  const double w2 = sp.omega_L * sp.omega_L;
  const double c4 = std::sqrt(pi) * w2 / (8.0 * std::sqrt(2.0) * sol.a_tilde);
  const double c6 =
      std::sqrt(pi) * w2 * w2 / (128.0 * std::sqrt(2.0) * sol.a_tilde);
  sol.R_dL_leading = std::pow(1.0 / c4, 0.25);
  sol.R_dL = find_root(
      [&](double R) {
        return c4 * std::pow(R, 4.0) + c6 * std::pow(R, 6.0) - 1.0;
      },
      0.5 * sol.R_dL_leading, 2.0 * sol.R_dL_leading, 1e-14);
  sol.mu_dL = 0.5 * w2 * sol.R_dL * sol.R_dL;
  sol.mu_d = sol.mu_dL + 0.5;
  sol.regime_warning = sol.a_tilde * sol.f_sq(0.0) > 0.3;
  return sol;
}

std::vector<std::vector<double>>
variational_density_matrix(const VariationalSolution& sol,
                           std::span<const double> samples) {
  const std::size_t n = samples.size();
  std::vector<double> f(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = std::sqrt(sol.f_sq(samples[i]));
    s[i] = sol.sigma(samples[i]);
  }
  std::vector<std::vector<double>> kernel(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v;
      if (sol.d == 1)
        v = 2.0 * f[i] * s[i] * f[j] * s[j] / (s[i] * s[i] + s[j] * s[j]);
      else
        v = std::sqrt(2.0 * s[i] * s[j]) * f[i] * f[j] /
            std::sqrt(s[i] * s[i] + s[j] * s[j]);
      kernel[i][j] = kernel[j][i] = v;
    }
  return kernel;
}

Observables variational_observables(const VariationalSolution& sol,
                                    double N, int n_quad) {
  Observables obs;
  const double R = sol.R_dL;
  if (sol.d == 1) {
    // z in [-R, R], midpoint rule
    const double h = 2.0 * R / n_quad;
    std::vector<double> z(n_quad);
    for (int i = 0; i < n_quad; ++i)
      z[i] = -R + (i + 0.5) * h;
    const auto kernel = variational_density_matrix(sol, z);
    double purity = 0.0, neta = 0.0;
    for (int i = 0; i < n_quad; ++i) {
      const double fs = sol.f_sq(z[i]);
      const double sg = sol.sigma(z[i]);
      neta += fs * fs / (2.0 * pi * sg * sg);
      for (int j = 0; j < n_quad; ++j)
        purity += kernel[i][j] * kernel[i][j];
    }
    obs.purity = purity * h * h;
    obs.N_eta = N * neta * h;
  } else {
    // radial samples in [0, R] with 2 pi r measure
    const double h = R / n_quad;
    std::vector<double> r(n_quad), w(n_quad);
    for (int i = 0; i < n_quad; ++i) {
      r[i] = (i + 0.5) * h;
      w[i] = 2.0 * pi * r[i] * h;
    }
    const auto kernel = variational_density_matrix(sol, r);
    double purity = 0.0, neta = 0.0;
    for (int i = 0; i < n_quad; ++i) {
      const double fs = sol.f_sq(r[i]);
      const double sg = sol.sigma(r[i]);
      neta += fs * fs / (std::sqrt(2.0 * pi) * sg) * w[i];
      for (int j = 0; j < n_quad; ++j)
        purity += kernel[i][j] * kernel[i][j] * w[i] * w[j];
    }
    obs.purity = purity;
    obs.N_eta = N * neta;
  }
  return obs;
}

} // namespace anisobec::variational
