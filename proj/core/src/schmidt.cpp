#include "anisobec/schmidt.hpp"

#include "anisobec/regimes.hpp"
#include "anisobec/root_finding.hpp"
#include "anisobec/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace anisobec::schmidt {

using std::numbers::pi;

namespace {

// Overlaps <xi_n|xi0^3> / eta_T and gaps (E_n - E0) / hbar omega_T for the
// bare transverse eigenmodes that couple to the ground state.
// D = 2 (cigar): zero-angular-momentum Laguerre modes, overlap 2^-n, gap 2n.
// D = 1 (pancake): even Hermite modes, overlap (-1)^{n/2} G((n+1)/2) /
// sqrt(pi n!), gap n.
struct CouplingTerm {
  int n;          // bare-basis index (Hermite n or Laguerre n_r)
  double overlap; // in units of eta_T
  double gap;     // in units of hbar omega_T
};

std::vector<CouplingTerm> coupling_terms(int D, int n_max) {
  std::vector<CouplingTerm> terms;
  if (D == 2) {
    double ov = 0.5; // n_r = 1
    for (int n = 1; n <= n_max; ++n) {
      terms.push_back({n, ov, 2.0 * n});
      ov *= 0.5;
    }
  } else {
    // even n = 2m; |overlap| recurrence t_{m+1} = t_m (m+1/2) /
    // sqrt((2m+1)(2m+2)), t_1 = 1/(2 sqrt 2)
    double t = 1.0 / (2.0 * std::sqrt(2.0));
    double sign = -1.0; // (-1)^{n/2} at n = 2
    for (int m = 1; 2 * m <= n_max; ++m) {
      terms.push_back({2 * m, sign * t, 2.0 * m});
      t *= (m + 0.5) / std::sqrt((2.0 * m + 1.0) * (2.0 * m + 2.0));
      sign = -sign;
    }
  }
  return terms;
}

double eta_T_of(int D) { return std::pow(2.0 * pi, -0.5 * D); }

double surface_factor(int d) { return d == 1 ? 2.0 : 2.0 * pi; }

// Simpson quadrature of f over [0, b].
template <typename F>
double simpson(F&& f, double b, int n_intervals = 4096) {
  const double h = b / n_intervals;
  double sum = f(0.0) + f(b);
  for (int i = 1; i < n_intervals; ++i)
    sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

struct TfMoments {
  double eta_L;
  double delta_eta_L;
};

// <phi00|phi00^3> and the variance of phi00^2 for the zero-order TF
// profile. Closed forms for q = 2, quadrature otherwise.
TfMoments tf_moments(const ScaledProblem& sp, double R_L0) {
  if (sp.harmonic()) {
    const double d = sp.d;
    const double eta_L = d * (d + 2.0) /
                         ((d + 4.0) * std::pow(pi, d - 1.0) *
                          std::pow(R_L0, static_cast<double>(sp.d)));
    return {eta_L, std::sqrt(d / (2.0 * (d + 6.0))) * eta_L};
  }
  const double gt_eta_T = sp.g_tilde() * eta_T_of(sp.D);
  const double mu_L0 = 0.5 * sp.k * std::pow(R_L0, sp.q);
  const auto phi00_sq = [&](double r) {
    return (mu_L0 - 0.5 * sp.k * std::pow(r, sp.q)) / gt_eta_T;
  };
  const double S = surface_factor(sp.d);
  const double eta_L = S * simpson(
                               [&](double r) {
                                 const double p = phi00_sq(r);
                                 return p * p * std::pow(r, sp.d - 1.0);
                               },
                               R_L0);
  const double m6 = S * simpson(
                            [&](double r) {
                              const double p = phi00_sq(r);
                              return p * p * p * std::pow(r, sp.d - 1.0);
                            },
                            R_L0);
  return {eta_L, std::sqrt(std::max(0.0, m6 - eta_L * eta_L))};
}

} // namespace

GeometryConstants geometry_constants(const ScaledProblem& sp) {
  if (!(sp.N > 1.0))
    throw std::domain_error(
        "geometry_constants: N <= 1 leaves eta_L undefined (R_L0 = 0)");
  GeometryConstants gc;
  gc.eta_T = eta_T_of(sp.D);
  const double R_L0 = detail::tf_radius_zero_scaled(sp);
  const TfMoments m = tf_moments(sp, R_L0);
  gc.eta_L = m.eta_L;
  gc.delta_eta_L = m.delta_eta_L;
  gc.upsilon_T = detail::upsilon_hat(sp.d) * gc.eta_T * gc.eta_T;
  const double g = 4.0 * pi * sp.a;
  gc.g_eta_T = g * gc.eta_T;
  gc.three_body_coupling = 3.0 * g * g * gc.upsilon_T;
  gc.combo_con = sp.g_tilde() * gc.eta_T * gc.eta_L;
  return gc;
}

double upsilon_series(const ScaledProblem& sp, int n_max) {
  if (n_max < 2)
    throw std::invalid_argument("upsilon_series: n_max must be >= 2");
  const double eta_T = eta_T_of(sp.D);
  double sum = 0.0;
  for (const auto& t : coupling_terms(sp.D, n_max))
    sum += t.overlap * t.overlap / t.gap;
  return sum * eta_T * eta_T;
}

RLZero rl_zero_order(const ScaledProblem& sp) {
  RLZero z;
  z.R_L0 = detail::tf_radius_zero_scaled(sp);
  z.mu_L0 = 0.5 * sp.k * std::pow(z.R_L0, sp.q);
  const double uh = detail::upsilon_hat(sp.d);
  z.R_L1_over_R_L0 = -3.0 * uh * sp.q /
                     ((2.0 * sp.q + sp.d) * (sp.q + sp.d)) * sp.k *
                     std::pow(z.R_L0, sp.q);
  return z;
}

RLResult solve_RL(const ScaledProblem& sp, RLMode mode) {
  const RLZero z = rl_zero_order(sp);
  double R;
  if (mode == RLMode::FirstOrder) {
    R = z.R_L0 * (1.0 + z.R_L1_over_R_L0);
  } else {
    const double gt_eta_T = sp.g_tilde() * eta_T_of(sp.D);
    const double uh = detail::upsilon_hat(sp.d);
    const double q = sp.q, d = sp.d;
    const auto residual = [&](double r) {
      return sp.k / gt_eta_T * q * std::pow(pi, d - 1.0) / (d * (q + d)) *
                 (1.0 + 3.0 * uh * q / (2.0 * q + d) * sp.k *
                            std::pow(r, q)) *
                 std::pow(r, q + d) -
             1.0;
    };
    R = find_root(residual, 0.5 * z.R_L0, 2.0 * z.R_L0, 1e-15);
  }
  return {R, 0.5 * sp.k * std::pow(R, sp.q)};
}

double chemical_potential(const ScaledProblem& sp, MuMode mode) {
  const double E0 = 0.5 * sp.D; // bare transverse ground energy
  if (!(sp.N > 1.0))
    return E0;
  if (mode == MuMode::ExactRL)
    return E0 + solve_RL(sp, RLMode::Exact).mu_L;
  const RLZero z = rl_zero_order(sp);
  const double uh = detail::upsilon_hat(sp.d);
  const double q = sp.q, d = sp.d;
  const double mu_L =
      z.mu_L0 * (1.0 - 3.0 * uh * q * q / ((2.0 * q + d) * (q + d)) * sp.k *
                           std::pow(z.R_L0, q));
  return E0 + mu_L;
}

LongitudinalProfiles longitudinal_profiles(const ScaledProblem& sp,
                                           std::span<const double> r_samples) {
  const GeometryConstants gc = geometry_constants(sp);
  const RLZero z = rl_zero_order(sp);
  const RLResult rl = solve_RL(sp, RLMode::Exact);
  const double gt = sp.g_tilde();
  const double gt_eta_T = gt * gc.eta_T;
  const double uh = detail::upsilon_hat(sp.d);

  LongitudinalProfiles out;
  out.r.assign(r_samples.begin(), r_samples.end());
  out.phi0_sq.resize(out.r.size());
  out.phi00_sq.resize(out.r.size());
  out.phi1.resize(out.r.size());
  out.eta_T_rect.resize(out.r.size());
  if (sp.harmonic()) {
    const double N_L = detail::lower_critical_N(sp);
    out.below_tf_warning = sp.N < N_L;
  }
  for (std::size_t i = 0; i < out.r.size(); ++i) {
    const double V = 0.5 * sp.k * std::pow(out.r[i], sp.q);
    const double u = (rl.mu_L - V) / gt_eta_T;
    const double u0 = (z.mu_L0 - V) / gt_eta_T;
    // TF convention: clamp to zero outside the radius, no smoothing
    out.phi0_sq[i] =
        u > 0.0 ? u + 3.0 * gt * uh * gc.eta_T * u * u : 0.0;
    out.phi00_sq[i] = std::max(u0, 0.0);
    const double phi00 = std::sqrt(out.phi00_sq[i]);
    out.phi1[i] = (out.phi00_sq[i] - gc.eta_L) * phi00 / gc.delta_eta_L;
    out.eta_T_rect[i] = gc.eta_T - 3.0 * gt * gc.upsilon_T * out.phi0_sq[i];
  }
  return out;
}

double ModeExpansion::evaluate(double rho) const {
  if (basis == TransverseBasis::RadialLaguerre2D) {
    // xi_n(rho) = pi^{-1/2} L_n(rho^2) exp(-rho^2/2)
    const double x = rho * rho;
    const double envelope = std::exp(-0.5 * x) / std::sqrt(pi);
    double Lm1 = 1.0, L = 1.0 - x;
    double acc = coefficients[0] * Lm1;
    if (coefficients.size() > 1)
      acc += coefficients[1] * L;
    for (std::size_t n = 1; n + 1 < coefficients.size(); ++n) {
      const double Lp1 =
          ((2.0 * n + 1.0 - x) * L - static_cast<double>(n) * Lm1) /
          (n + 1.0);
      Lm1 = L;
      L = Lp1;
      acc += coefficients[n + 1] * L;
    }
    return acc * envelope;
  }
  // Hermite: xi_n(z) = pi^{-1/4} (2^n n!)^{-1/2} H_n(z) exp(-z^2/2);
  // normalized recurrence h_{n+1} = sqrt(2/(n+1)) z h_n - sqrt(n/(n+1)) h_{n-1}
  const double envelope = std::exp(-0.5 * rho * rho) / std::pow(pi, 0.25);
  double hm1 = 1.0, h = std::sqrt(2.0) * rho;
  double acc = coefficients[0] * hm1;
  if (coefficients.size() > 1)
    acc += coefficients[1] * h;
  for (std::size_t n = 1; n + 1 < coefficients.size(); ++n) {
    const double hp1 =
        std::sqrt(2.0 / (n + 1.0)) * rho * h -
        std::sqrt(static_cast<double>(n) / (n + 1.0)) * hm1;
    hm1 = h;
    h = hp1;
    acc += coefficients[n + 1] * h;
  }
  return acc * envelope;
}

double ModeExpansion::norm_sq() const {
  double s = 0.0;
  for (double c : coefficients)
    s += c * c;
  return s;
}

TransverseSchmidt transverse_schmidt(const ScaledProblem& sp, int n_max) {
  if (n_max < 4)
    throw std::invalid_argument("transverse_schmidt: n_max must be >= 4");
  const TransverseBasis b = sp.D == 1 ? TransverseBasis::Hermite1D
                                      : TransverseBasis::RadialLaguerre2D;
  if (!(sp.N > 1.0)) {
    // no interaction: chi0 is the bare mode, chi1 vanishes
    TransverseSchmidt bare;
    bare.chi0.basis = bare.chi1.basis = b;
    bare.chi0.coefficients.assign(n_max + 1, 0.0);
    bare.chi1.coefficients.assign(n_max + 1, 0.0);
    bare.chi0.coefficients[0] = 1.0;
    bare.lambda1 = 0.0;
    return bare;
  }
  const GeometryConstants gc = geometry_constants(sp);
  const double gt = sp.g_tilde();
  const TransverseBasis basis = sp.D == 1 ? TransverseBasis::Hermite1D
                                          : TransverseBasis::RadialLaguerre2D;
  TransverseSchmidt out;
  out.chi0.basis = out.chi1.basis = basis;
  out.chi0.coefficients.assign(n_max + 1, 0.0);
  out.chi1.coefficients.assign(n_max + 1, 0.0);
  out.chi0.coefficients[0] = 1.0;
  double lambda1 = 0.0;
  for (const auto& t : coupling_terms(sp.D, n_max)) {
    const double mixing = gc.eta_T * t.overlap / t.gap;
    out.chi0.coefficients[t.n] = -gt * gc.eta_L * mixing;
    const double b = -gt * gc.delta_eta_L * mixing;
    out.chi1.coefficients[t.n] = b;
    lambda1 += b * b;
  }
  out.lambda1 = lambda1;
  return out;
}

double lambda1_closed(const ScaledProblem& sp) {
  if (!(sp.N > 1.0))
    return 0.0;
  const GeometryConstants gc = geometry_constants(sp);
  const double pref = sp.a * sp.a * (sp.N - 1.0) * (sp.N - 1.0) *
                      gc.delta_eta_L * gc.delta_eta_L;
  if (sp.d == 1)
    return pref * specfun::polylog(2.0, 0.25).value;
  return pref * (pi / 4.0) *
         specfun::hypergeometric_pFq({1.0, 1.0, 1.0, 1.5}, {2.0, 2.0, 2.0},
                                     0.25)
             .value;
}

double purity_first_order(const ScaledProblem& sp) {
  return std::clamp(1.0 - 2.0 * lambda1_closed(sp), 0.0, 1.0);
}

AverageDensity average_density(const ScaledProblem& sp) {
  if (!sp.harmonic())
    throw std::domain_error(
        "average_density: closed form requires a harmonic trap (q = 2)");
  const GeometryConstants gc = geometry_constants(sp);
  const RLZero z = rl_zero_order(sp);
  const double uh = detail::upsilon_hat(sp.d);
  const double d = sp.d;
  const double kr2 = sp.k * z.R_L0 * z.R_L0; // (rho0 R_L0 / r0^2)^2
  AverageDensity out;
  out.N_eta_zero_order = sp.N * gc.eta_T * gc.eta_L;
  out.N_eta_full = out.N_eta_zero_order *
                   (1.0 - 24.0 / ((d + 2.0) * (d + 6.0)) * uh * kr2);
  // dominant Schmidt term alone: eta0 = eta + 4 g~ Upsilon_T DeltaEtaL^2
  out.N_eta_dominant =
      out.N_eta_full + 4.0 * sp.N * sp.g_tilde() * gc.upsilon_T *
                           gc.delta_eta_L * gc.delta_eta_L;
  return out;
}

ReducedModel reduced_model(const ScaledProblem& sp, int n_profile_samples,
                           int n_max) {
  const GeometryConstants gc = geometry_constants(sp);
  const RLZero z = rl_zero_order(sp);
  const RLResult exact = solve_RL(sp, RLMode::Exact);
  const RLResult first = solve_RL(sp, RLMode::FirstOrder);

  ReducedModel m;
  m.geometry = gc;
  m.R_L = exact.R_L;
  m.R_L_first_order = first.R_L;
  m.R_L0 = z.R_L0;
  m.mu_L = exact.mu_L;
  m.mu_L_first_order =
      chemical_potential(sp, MuMode::FirstOrder) - 0.5 * sp.D;
  m.mu_total = 0.5 * sp.D + exact.mu_L;
  m.lambda1 = lambda1_closed(sp);
  m.purity = std::clamp(1.0 - 2.0 * m.lambda1, 0.0, 1.0);
  m.eta_L_tilde =
      gc.eta_L * std::pow(exact.R_L / z.R_L0, 2.0 * sp.q + sp.d);
  m.eta = gc.eta_T * m.eta_L_tilde +
          2.0 * sp.g_tilde() * gc.upsilon_T *
              (gc.eta_L * gc.eta_L + gc.delta_eta_L * gc.delta_eta_L);
  m.eta_dominant = m.eta + 4.0 * sp.g_tilde() * gc.upsilon_T *
                               gc.delta_eta_L * gc.delta_eta_L;

  std::vector<double> rs(n_profile_samples);
  const double r_max = 1.2 * std::max(exact.R_L, z.R_L0);
  for (int i = 0; i < n_profile_samples; ++i)
    rs[i] = r_max * i / (n_profile_samples - 1.0);
  m.profiles = longitudinal_profiles(sp, rs);
  m.transverse = transverse_schmidt(sp, n_max);
  return m;
}

std::vector<double> assemble_wavefunction(const ScaledProblem& sp,
                                          const Grid& grid, int n_max) {
  const RLResult exact = solve_RL(sp, RLMode::Exact);
  const double L_long_x = sp.d == 1 ? grid.Lz : grid.Lx;
  const double L_long_y = sp.d == 1 ? grid.Lz : grid.Ly;
  const double L_trans = sp.d == 1 ? std::min(grid.Lx, grid.Ly) : grid.Lz;
  if (L_trans < 4.0 || std::min(L_long_x, L_long_y) < 1.5 * exact.R_L) {
    std::ostringstream msg;
    msg << "assemble_wavefunction: grid coverage too small (transverse "
        << L_trans << " rho0, need >= 4; longitudinal "
        << std::min(L_long_x, L_long_y) << " rho0, need >= 1.5 R_L = "
        << 1.5 * exact.R_L << ")";
    throw std::invalid_argument(msg.str());
  }

  const TransverseSchmidt ts = transverse_schmidt(sp, n_max);
  const double lambda1 = lambda1_closed(sp);
  const double sqrt_lambda0 = std::sqrt(1.0 - lambda1);
  const GeometryConstants gc = geometry_constants(sp);
  const RLZero z = rl_zero_order(sp);
  const double gt_eta_T = sp.g_tilde() * gc.eta_T;
  const double uh = detail::upsilon_hat(sp.d);

  const auto phi0 = [&](double r) {
    const double V = 0.5 * sp.k * std::pow(r, sp.q);
    const double u = (exact.mu_L - V) / gt_eta_T;
    if (u <= 0.0)
      return 0.0;
    return std::sqrt(u + 3.0 * sp.g_tilde() * uh * gc.eta_T * u * u);
  };
  const auto phi1 = [&](double r) {
    const double V = 0.5 * sp.k * std::pow(r, sp.q);
    const double u0 = (z.mu_L0 - V) / gt_eta_T;
    if (u0 <= 0.0)
      return 0.0;
    return (u0 - gc.eta_L) * std::sqrt(u0) / gc.delta_eta_L;
  };

  std::vector<double> psi(grid.size());
  if (sp.d == 1) {
    // tight axes x,y; loose axis z
    std::vector<double> p0(grid.nz), p1(grid.nz);
    for (int kk = 0; kk < grid.nz; ++kk) {
      p0[kk] = phi0(std::abs(grid.z(kk)));
      p1[kk] = phi1(std::abs(grid.z(kk)));
    }
    for (int i = 0; i < grid.nx; ++i) {
      for (int j = 0; j < grid.ny; ++j) {
        const double rho = std::hypot(grid.x(i), grid.y(j));
        const double c0 = sqrt_lambda0 * ts.chi0.evaluate(rho);
        const double c1 = ts.chi1.evaluate(rho);
        double* row = psi.data() + grid.index(i, j, 0);
        for (int kk = 0; kk < grid.nz; ++kk)
          row[kk] = c0 * p0[kk] + c1 * p1[kk];
      }
    }
  } else {
    // tight axis z; loose axes x,y
    std::vector<double> c0(grid.nz), c1(grid.nz);
    for (int kk = 0; kk < grid.nz; ++kk) {
      c0[kk] = sqrt_lambda0 * ts.chi0.evaluate(grid.z(kk));
      c1[kk] = ts.chi1.evaluate(grid.z(kk));
    }
    for (int i = 0; i < grid.nx; ++i) {
      for (int j = 0; j < grid.ny; ++j) {
        const double r = std::hypot(grid.x(i), grid.y(j));
        const double p0 = phi0(r), p1 = phi1(r);
        double* row = psi.data() + grid.index(i, j, 0);
        for (int kk = 0; kk < grid.nz; ++kk)
          row[kk] = p0 * c0[kk] + p1 * c1[kk];
      }
    }
  }

  double norm_sq = 0.0;
  for (double v : psi)
    norm_sq += v * v;
  norm_sq *= grid.cell_volume();
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (double& v : psi)
    v *= scale;
  return psi;
}

} // namespace anisobec::schmidt
