#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "linefront/errors.hpp"

namespace linefront {

/// A validated sign-change interval.
struct RootBracket {
  double lo, hi;
  double f_lo, f_hi;

  static RootBracket from_evaluated(double lo, double hi, double f_lo,
                                    double f_hi) {
    if (!(lo < hi)) throw InvalidBracketError("RootBracket: requires lo < hi");
    if (!(f_lo * f_hi < 0.0))
      throw InvalidBracketError(
          "RootBracket: f(lo) and f(hi) must have opposite signs, got f(" +
          std::to_string(lo) + ") = " + std::to_string(f_lo) + ", f(" +
          std::to_string(hi) + ") = " + std::to_string(f_hi));
    return RootBracket{lo, hi, f_lo, f_hi};
  }
};

/// Evaluate f at both ends and build a bracket.
template <class F>
RootBracket bracket_root(F&& f, double lo, double hi) {
  return RootBracket::from_evaluated(lo, hi, f(lo), f(hi));
}

/// Brent's method: bisection with inverse-quadratic/secant acceleration,
/// never leaving the bracket. Stops when |f| <= tol or the bracket width
/// drops to tol (or machine precision).
template <class F>
double find_root(F&& f, const RootBracket& bracket, double tol) {
  double a = bracket.lo, b = bracket.hi;
  double fa = bracket.f_lo, fb = bracket.f_hi;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw InvalidBracketError("find_root: signs agree");

  double c = a, fc = fa;
  double d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= tol) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        q = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

}  // namespace linefront
