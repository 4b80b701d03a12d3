#include "anisobec/regimes.hpp"

#include <cmath>
#include <numbers>

namespace anisobec {

using std::numbers::pi;

std::string_view to_string(Regime r) {
  switch (r) {
  case Regime::BelowTF:
    return "BelowTF";
  case Regime::ReducedDim:
    return "ReducedDim";
  case Regime::Crossover:
    return "Crossover";
  }
  return "?";
}

namespace detail {

double upsilon_hat(int d) {
  if (d == 1)
    return 0.5 * std::log(4.0 / 3.0);
  if (d == 2)
    return std::log(8.0 - 4.0 * std::sqrt(3.0));
  throw std::invalid_argument("upsilon_hat: d must be 1 or 2");
}

double tf_radius_zero_scaled(const ScaledProblem& sp) {
  if (!(sp.N > 1.0))
    throw std::domain_error("tf_radius_zero: N = 1 has no TF radius");
  const double d = sp.d, q = sp.q;
  // rho0 = 1 in trap units
  const double arg = (sp.N - 1.0) * std::pow(2.0, (d + 1.0) / 2.0) /
                     std::pow(pi, (d - 1.0) / 2.0) * d * (q + d) / q * sp.a *
                     std::pow(sp.r0, 2.0 + q);
  return std::pow(arg, 1.0 / (q + d));
}

double lower_critical_N(const ScaledProblem& sp) {
  if (!sp.harmonic())
    throw std::domain_error(
        "lower_critical_N: closed form requires a harmonic trap (q = 2)");
  return 1.0 + sp.d * std::sqrt(pi / 2.0) * (sp.r0 / (2.0 * sp.a)) *
                   std::pow(1.0 / sp.r0, sp.D);
}

double upper_critical_N(const ScaledProblem& sp) {
  if (!sp.harmonic())
    throw std::domain_error(
        "upper_critical_N: closed form requires a harmonic trap (q = 2)");
  const double d = sp.d, D = sp.D;
  return 1.0 + std::pow(pi, (d - 1.0) / 2.0) /
                   std::pow(8.0, (d + 1.0) / 2.0) *
                   std::pow(D * (d + 4.0), d / 2.0 + 1.0) /
                   (d * (d + 2.0)) * (1.0 / sp.a) * std::pow(sp.r0, 2.0 * d);
}

double expansion_parameter(const ScaledProblem& sp) {
  if (sp.N <= 1.0)
    return 0.0;
  const double NT = upper_critical_N(sp);
  return 3.0 * upsilon_hat(sp.d) *
         std::pow((sp.N - 1.0) / (NT - 1.0), 2.0 / (sp.d + 2.0));
}

} // namespace detail

std::pair<double, double> oscillator_lengths(const TrapSpec& trap,
                                             const AtomSpecies& species) {
  trap.validate();
  species.validate();
  const double rho0 =
      std::sqrt(constants::hbar / (species.mass * trap.omega_T));
  const double k = trap.stiffness(species);
  const double r0 = std::pow(
      constants::hbar * constants::hbar / (species.mass * k),
      1.0 / (2.0 + trap.q));
  return {rho0, r0};
}

double lower_critical_N(const ProblemSpec& spec) {
  return detail::lower_critical_N(spec.scaled());
}

double upper_critical_N(const ProblemSpec& spec) {
  return detail::upper_critical_N(spec.scaled());
}

double expansion_parameter(const ProblemSpec& spec) {
  return detail::expansion_parameter(spec.scaled());
}

TfRadii tf_radius_zero(const ProblemSpec& spec) {
  const ScaledProblem sp = spec.scaled();
  const double R_L0 = detail::tf_radius_zero_scaled(sp);
  ScaledProblem at_NT = sp;
  at_NT.N = detail::upper_critical_N(sp);
  const double R_hat = detail::tf_radius_zero_scaled(at_NT);
  return {sp.length_si(R_L0), sp.length_si(R_hat)};
}

RegimeReport classify(const ProblemSpec& spec) {
  const ScaledProblem sp = spec.scaled();
  RegimeReport rep;
  rep.rho0 = sp.rho0_si;
  rep.r0 = sp.length_si(sp.r0);
  rep.N_L = detail::lower_critical_N(sp);
  rep.N_T = detail::upper_critical_N(sp);
  rep.epsilon = detail::expansion_parameter(sp);
  rep.R_L0 = sp.N > 1.0 ? sp.length_si(detail::tf_radius_zero_scaled(sp)) : 0.0;
  ScaledProblem at_NT = sp;
  at_NT.N = rep.N_T;
  rep.R_L0_at_NT = sp.length_si(detail::tf_radius_zero_scaled(at_NT));
  if (sp.N < rep.N_L)
    rep.regime_label = Regime::BelowTF;
  else if (sp.N <= rep.N_T)
    rep.regime_label = Regime::ReducedDim;
  else
    rep.regime_label = Regime::Crossover;
  return rep;
}

} // namespace anisobec
