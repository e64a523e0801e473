#pragma once

#include <cmath>
#include <sstream>

#include "olg/errors.hpp"

namespace olg {

/// Bisection on [lo, hi] where f(lo) and f(hi) have opposite signs.
/// Stops when the bracket is narrower than abs_tol + rel_tol * |mid|, or
/// when it can no longer be split in double precision.
template <class F>
double bisect(F&& f, double lo, double hi, double abs_tol = 0.0, double rel_tol = 0.0,
              int max_iter = 4000) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream os;
    os << "bisection: no sign change on [" << lo << ", " << hi << "] (f = " << f_lo << ", " << f_hi
       << ")";
    fail(ErrorKind::Numeric, os.str());
  }
  for (int it = 0; it < max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return mid;
    if (hi - lo <= abs_tol + rel_tol * std::abs(mid)) return mid;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  fail(ErrorKind::Numeric, "bisection: iteration limit reached");
}

/// Root of a strictly monotone f on (0, inf): starts from [lo, hi] and
/// doubles hi / halves lo until the signs differ.
template <class F>
double bisect_positive_axis(F&& f, double lo = 0.5, double hi = 2.0, double abs_tol = 0.0,
                            int max_doublings = 2000) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  for (int k = 0; k < max_doublings && (f_lo > 0.0) == (f_hi > 0.0); ++k) {
    // Move toward the side where |f| shrinks.
    const bool root_above = (f_lo > 0.0) == (f_hi < f_lo);
    if (root_above) {
      lo = hi;
      f_lo = f_hi;
      hi *= 2.0;
      f_hi = f(hi);
    } else {
      hi = lo;
      f_hi = f_lo;
      lo *= 0.5;
      f_lo = f(lo);
    }
    if (!std::isfinite(hi) || lo <= 0.0) break;
  }
  if ((f_lo > 0.0) == (f_hi > 0.0))
    fail(ErrorKind::Numeric, "root not bracketed after expansion; aggregator is not monotone");
  return bisect(f, lo, hi, abs_tol, 0.0);
}

}  // namespace olg
