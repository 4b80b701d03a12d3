#pragma once

#include <cstdint>
#include <vector>

namespace anisobec::specfun {

inline constexpr double kDefaultTol = 1e-13; // relative

struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;
  double truncation_bound = 0.0; // estimated relative truncation error
};

/// Polylogarithm Li_s(z) = sum_{n>=1} z^n / n^s by forward summation.
/// Requires |z| < 1; convergence is geometric for the |z| <= 1/4 arguments
/// used here.
SeriesResult polylog(double s, double z, double tol = kDefaultTol);

/// Pochhammer symbol (alpha)_n = alpha (alpha+1) ... (alpha+n-1).
double pochhammer(double alpha, int n);

/// Generalized hypergeometric pFq(upper; lower; z) by term recurrence.
/// Stops once |term| < tol |partial sum| for 3 consecutive terms.
/// Lower parameters must not be nonpositive integers.
SeriesResult hypergeometric_pFq(const std::vector<double>& upper,
                                const std::vector<double>& lower, double z,
                                double tol = kDefaultTol);

} // namespace anisobec::specfun
