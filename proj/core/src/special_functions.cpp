#include "anisobec/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace anisobec::specfun {

namespace {
constexpr int kMaxTerms = 1'000'000;

bool nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}
} // namespace

SeriesResult polylog(double s, double z, double tol) {
  if (!(std::abs(z) < 1.0))
    throw std::domain_error("polylog: requires |z| < 1");
  SeriesResult res;
  if (z == 0.0)
    return res;
  double term = z; // n = 1
  double sum = 0.0;
  int n = 1;
  for (; n <= kMaxTerms; ++n) {
    sum += term;
    // geometric tail bound: |sum_{k>n}| <= |term_{n+1}| / (1 - |z|)
    const double next = std::abs(term * z);
    if (next / (1.0 - std::abs(z)) < tol * std::abs(sum))
      break;
    term *= z * std::pow(static_cast<double>(n) / (n + 1), s);
  }
  res.value = sum;
  res.terms_used = n;
  res.truncation_bound =
      std::abs(term * z) / (1.0 - std::abs(z)) / std::abs(sum);
  return res;
}

double pochhammer(double alpha, int n) {
  if (n < 0)
    throw std::domain_error("pochhammer: n must be >= 0");
  double p = 1.0;
  for (int k = 0; k < n; ++k)
    p *= alpha + k;
  return p;
}

SeriesResult hypergeometric_pFq(const std::vector<double>& upper,
                                const std::vector<double>& lower, double z,
                                double tol) {
  for (double b : lower)
    if (nonpositive_integer(b))
      throw std::domain_error(
          "hypergeometric_pFq: nonpositive-integer lower parameter");
  SeriesResult res;
  double term = 1.0; // n = 0
  double sum = 0.0;
  int small_streak = 0;
  int n = 0;
  for (; n < kMaxTerms; ++n) {
    sum += term;
    double ratio = z / (n + 1.0);
    for (double aP : upper)
      ratio *= aP + n;
    for (double b : lower)
      ratio /= b + n;
    term *= ratio;
    if (std::abs(term) < tol * std::abs(sum)) {
      if (++small_streak >= 3)
        break;
    } else {
      small_streak = 0;
    }
  }
  if (n >= kMaxTerms)
    throw std::runtime_error(
        "hypergeometric_pFq: no convergence within 1e6 terms");
  res.value = sum;
  res.terms_used = n + 1;
  res.truncation_bound = std::abs(term) / std::abs(sum);
  return res;
}

} // namespace anisobec::specfun
