#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace anisobec {

/// Bracketed root finding: secant steps guarded by bisection. The initial
/// bracket [lo, hi] is widened geometrically (up to max_widen doublings) if
/// it does not straddle a sign change.
inline double find_root(const std::function<double(double)>& f, double lo,
                        double hi, double rel_tol = 1e-14,
                        int max_widen = 60) {
  double flo = f(lo), fhi = f(hi);
  for (int w = 0; w < max_widen && flo * fhi > 0.0; ++w) {
    lo *= 0.5;
    hi *= 2.0;
    flo = f(lo);
    fhi = f(hi);
  }
  if (flo * fhi > 0.0)
    throw std::runtime_error("find_root: no sign change in bracket");
  if (flo == 0.0)
    return lo;
  if (fhi == 0.0)
    return hi;
  double prev_width = hi - lo;
  for (int it = 0; it < 200; ++it) {
    // secant proposal; bisect if it leaves the bracket or progress stalls
    double mid = hi - fhi * (hi - lo) / (fhi - flo);
    const bool stalled = (it % 2 == 1) && (hi - lo) > 0.5 * prev_width;
    prev_width = hi - lo;
    if (!(mid > lo && mid < hi) || stalled)
      mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0 || (hi - lo) < rel_tol * std::abs(mid))
      return mid;
    if (flo * fmid < 0.0) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace anisobec
