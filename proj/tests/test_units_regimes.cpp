#include "anisobec/regimes.hpp"
#include "anisobec/root_finding.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace anisobec;
using std::numbers::pi;

namespace {

constexpr double kTwoPi = 2.0 * pi;

ProblemSpec rb87(double fT_Hz, double fL_Hz, int d, double N = 2.0) {
  return ProblemSpec{AtomSpecies::rubidium87(),
                     TrapSpec{kTwoPi * fT_Hz, kTwoPi * fL_Hz, d}, N};
}

// Midpoint quadrature of int |psi|^4 over the longitudinal coordinate(s)
// for a normalized Gaussian of width w (d = 1) or its isotropic 2D
// analogue (d = 2). Radial measure 2 pi r for d = 2.
double gaussian_eta_L(int d, double w, int n = 40000) {
  const double R = 10.0 * w;
  const double h = R / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = (i + 0.5) * h;
    const double dens = std::exp(-r * r / (w * w)) /
                        std::pow(std::sqrt(pi) * w, d);
    const double meas = d == 1 ? 2.0 * h : 2.0 * pi * r * h;
    acc += dens * dens * meas;
  }
  return acc;
}

// Same for the transverse Gaussian ground state in D dimensions, width 1.
double gaussian_eta_T(int D, int n = 40000) {
  const double R = 10.0;
  const double h = R / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = (i + 0.5) * h;
    const double dens =
        std::exp(-r * r) / std::pow(std::sqrt(pi), D);
    const double meas = D == 1 ? 2.0 * h : 2.0 * pi * r * h;
    acc += dens * dens * meas;
  }
  return acc;
}

// int phi00^4 over the longitudinal TF profile of radius R.
double tf_eta_L(int d, double R, int n = 40000) {
  // phi00^2(r) = c (1 - r^2/R^2); fix c by quadrature normalization
  // instead of the closed form, then integrate the square
  const double h = R / n;
  double nrm = 0.0, four = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = (i + 0.5) * h;
    const double prof = 1.0 - r * r / (R * R);
    const double meas = d == 1 ? 2.0 * h : 2.0 * pi * r * h;
    nrm += prof * meas;
    four += prof * prof * meas;
  }
  const double c = 1.0 / nrm;
  return c * c * four;
}

} // namespace

TEST_CASE("oscillator lengths") {
  const auto spec = rb87(175.0, 3.5, 1);
  const auto [rho0, r0] = oscillator_lengths(spec.trap, spec.species);
  CHECK(r0 == doctest::Approx(5.8e-6).epsilon(0.02));
  CHECK(rho0 ==
        doctest::Approx(std::sqrt(constants::hbar /
                                  (spec.species.mass * spec.trap.omega_T))));

  // omega_T = omega_L is rejected by TrapSpec, so compare via scaling:
  // rho0 scales as 1/sqrt(omega_T)
  const auto spec2 = rb87(350.0, 3.5, 1);
  const auto [rho0b, r0b] = oscillator_lengths(spec2.trap, spec2.species);
  CHECK(r0b == doctest::Approx(r0));
  CHECK(rho0b == doctest::Approx(rho0 / std::sqrt(2.0)));
  // 350 Hz trap: rho0 = 0.1 r0
  CHECK(rho0b == doctest::Approx(0.1 * r0b).epsilon(0.01));
}

TEST_CASE("critical atom numbers vs quoted values") {
  const double NL1[3] = {70, 15, 8};
  const double NL2[3] = {430, 190, 140};
  const double NT1[3] = {4500, 10000, 14000};
  const double NT2[3] = {12000, 135000, 380000};
  const double fT[3] = {35, 175, 350};
  for (int i = 0; i < 3; ++i) {
    CHECK(lower_critical_N(rb87(fT[i], 3.5, 1)) ==
          doctest::Approx(NL1[i]).epsilon(0.10));
    CHECK(lower_critical_N(rb87(fT[i], 3.5, 2)) ==
          doctest::Approx(NL2[i]).epsilon(0.10));
    CHECK(upper_critical_N(rb87(fT[i], 3.5, 1)) ==
          doctest::Approx(NT1[i]).epsilon(0.10));
    CHECK(upper_critical_N(rb87(fT[i], 3.5, 2)) ==
          doctest::Approx(NT2[i]).epsilon(0.10));
  }
}

TEST_CASE("critical numbers agree with quadrature energy balance") {
  // N_L: g~ etaT etaL(bare Gaussian) = (d/2) hbar omega_L
  // N_T: g~ etaT etaL(TF at R_L0(N)) = (D/2) hbar omega_T
  // with all |psi|^4 integrals done by quadrature instead of closed form.
  for (int d : {1, 2}) {
    const auto spec = rb87(175.0, 3.5, d);
    const ScaledProblem sp = spec.scaled();
    const int D = 3 - d;

    const double etaT = gaussian_eta_T(D);
    const double etaLg = gaussian_eta_L(d, sp.r0);
    const double NL_quad =
        1.0 + 0.5 * d * sp.omega_L / (4.0 * pi * sp.a * etaT * etaLg);
    CHECK(NL_quad ==
          doctest::Approx(lower_critical_N(spec)).epsilon(0.005));

    const double NT_closed = upper_critical_N(spec);
    const auto balance = [&](double N) {
      ScaledProblem s = sp;
      s.N = N;
      const double RL0 = detail::tf_radius_zero_scaled(s);
      return 4.0 * pi * sp.a * (N - 1.0) * etaT * tf_eta_L(d, RL0) -
             0.5 * D;
    };
    const double NT_quad =
        find_root(balance, 0.5 * NT_closed, 2.0 * NT_closed, 1e-10);
    CHECK(NT_quad == doctest::Approx(NT_closed).epsilon(0.005));
  }
}

TEST_CASE("critical number limits") {
  // enormous a drives N_L to 1
  auto spec = rb87(175.0, 3.5, 1);
  spec.species.scattering_length = 1.0; // 1 m, absurd on purpose
  CHECK(lower_critical_N(spec) == doctest::Approx(1.0).epsilon(1e-6));

  // doubling a halves N_T - 1
  auto s1 = rb87(175.0, 3.5, 1);
  auto s2 = s1;
  s2.species.scattering_length *= 2.0;
  CHECK(upper_critical_N(s2) - 1.0 ==
        doctest::Approx(0.5 * (upper_critical_N(s1) - 1.0)));

  // q != 2 rejected
  auto s3 = rb87(175.0, 3.5, 1);
  s3.trap.q = 4.0;
  s3.trap.k = 1e-30;
  CHECK_THROWS_AS((void)lower_critical_N(s3), std::domain_error);
  CHECK_THROWS_AS((void)upper_critical_N(s3), std::domain_error);
}

TEST_CASE("expansion parameter") {
  auto s1 = rb87(175.0, 3.5, 1);
  s1.atom_number = upper_critical_N(s1);
  CHECK(expansion_parameter(s1) == doctest::Approx(0.43).epsilon(0.012));

  auto s2 = rb87(175.0, 3.5, 2);
  s2.atom_number = upper_critical_N(s2);
  CHECK(expansion_parameter(s2) == doctest::Approx(0.21).epsilon(0.012));

  auto s3 = rb87(175.0, 3.5, 1);
  s3.atom_number = 1.0;
  CHECK(expansion_parameter(s3) == 0.0);

  // strictly increasing in N; exact power-law rescaling
  auto sa = rb87(175.0, 3.5, 1);
  double prev = 0.0;
  for (double N : {10.0, 100.0, 1000.0, 10000.0}) {
    sa.atom_number = N;
    const double e = expansion_parameter(sa);
    CHECK(e > prev);
    prev = e;
  }
  auto sb = sa;
  sa.atom_number = 100.0;
  sb.atom_number = upper_critical_N(sa);
  const double ratio = expansion_parameter(sb) / expansion_parameter(sa);
  const double NT = upper_critical_N(sa);
  CHECK(ratio == doctest::Approx(std::pow((NT - 1.0) / 99.0, 2.0 / 3.0))
                     .epsilon(1e-12));
}

TEST_CASE("TF radius and aspect ratios at N_T") {
  const double asp1[3] = {16, 79, 158};
  const double asp2[3] = {12, 61, 122};
  const double fT[3] = {35, 175, 350};
  for (int i = 0; i < 3; ++i) {
    for (int d : {1, 2}) {
      auto spec = rb87(fT[i], 3.5, d);
      spec.atom_number = upper_critical_N(spec);
      const auto radii = tf_radius_zero(spec);
      const auto [rho0, r0] = oscillator_lengths(spec.trap, spec.species);
      const double aspect = radii.R_L0_at_NT / rho0;
      CHECK(aspect == doctest::Approx(d == 1 ? asp1[i] : asp2[i])
                          .epsilon(0.03));
      CHECK(radii.R_L0 == doctest::Approx(radii.R_L0_at_NT));
      // algebraic identity at N = N_T
      const int D = 3 - d;
      CHECK(radii.R_L0_at_NT ==
            doctest::Approx(0.5 * std::sqrt(D * (d + 4.0)) * (r0 / rho0) *
                            r0)
                .epsilon(1e-10));
    }
  }
}

TEST_CASE("TF radius rejects N = 1") {
  auto spec = rb87(175.0, 3.5, 1);
  spec.atom_number = 1.0;
  CHECK_THROWS_AS((void)tf_radius_zero(spec), std::domain_error);
}

TEST_CASE("regime classification") {
  auto spec = rb87(175.0, 3.5, 1);
  const double NL = lower_critical_N(spec);
  const double NT = upper_critical_N(spec);

  spec.atom_number = 0.5 * NL;
  CHECK(classify(spec).regime_label == Regime::BelowTF);
  spec.atom_number = 0.5 * (NL + NT);
  CHECK(classify(spec).regime_label == Regime::ReducedDim);
  spec.atom_number = 2.0 * NT;
  CHECK(classify(spec).regime_label == Regime::Crossover);

  const auto rep = classify(spec);
  CHECK(rep.N_L < rep.N_T);
  CHECK(rep.rho0 ==
        doctest::Approx(std::sqrt(constants::hbar /
                                  (spec.species.mass * spec.trap.omega_T))));
}
