#pragma once

#include <cmath>
#include <string>

#include "linefront/errors.hpp"

// Macdonald function K0 (modified Bessel function of the second kind,
// order zero). Self-contained: power series with log term on (0, 2],
// Chebyshev expansions of the scaled function sqrt(x) e^x K0(x) beyond.
// Coefficients were generated at 50-digit precision and are validated
// against the extended-precision series/asymptotic oracle in the tests.

namespace linefront {

namespace detail {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Chebyshev coefficients of sqrt(x) e^x K0(x), x in (2, 8], t = (16/x - 5)/3.
inline constexpr double kK0Cheb2to8[] = {
    2.42356052096672059,      -0.0223565260569981905,
    0.000773418115469385824,  -0.0000428100668888609946,
    3.08170017386297474e-6,   -2.63936722200966497e-7,
    2.56371303640346921e-8,   -2.74270554990020126e-9,
    3.16942965809749959e-10,  -3.90235328696218414e-11,
    5.0680406981885754e-12,   -6.88957474100787068e-13,
    9.74497849782591769e-14,  -1.42733284188454851e-14,
    2.15641257102146304e-15,  -3.34965425514956277e-16,
    5.33526021695291169e-17,  -8.69366998089075381e-18,
    1.44640434786221223e-18,
};

// Chebyshev coefficients of sqrt(x) e^x K0(x), x in (8, inf), t = 16/x - 1.
inline constexpr double kK0Cheb8up[] = {
    2.48798130173692408,      -0.00917485269102569531,
    0.000144455093177500582,  -4.01361417543570973e-6,
    1.56783181085231067e-7,   -7.77011043852173771e-9,
    4.61118257617971788e-10,  -3.15859299786056577e-11,
    2.43501803936504113e-12,  -2.0743313873983479e-13,
    1.92578728058991708e-14,  -1.9275548058389561e-15,
    2.06219802919781828e-16,  -2.3416851175792424e-17,
    2.80590281064304225e-18,
};

template <std::size_t N>
inline double clenshaw(const double (&c)[N], double t) {
  double b0 = 0.0, b1 = 0.0;
  for (std::size_t j = N - 1; j > 0; --j) {
    const double tmp = 2.0 * t * b0 - b1 + c[j];
    b1 = b0;
    b0 = tmp;
  }
  return t * b0 - b1 + 0.5 * c[0];
}

// Series part, valid for x <= 2:
//   K0(x) = -(ln(x/2) + gamma) I0(x) + sum_{n>=1} (x^2/4)^n / (n!)^2 * H_n
// All contributions are nonnegative for x <= 2, so no cancellation occurs.
inline double k0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;  // q^n / (n!)^2
  double i0 = 1.0;
  double sum = 0.0;
  double harmonic = 0.0;
  for (int n = 1; n < 60; ++n) {
    term *= q / (static_cast<double>(n) * n);
    harmonic += 1.0 / n;
    i0 += term;
    sum += term * harmonic;
    if (term * (harmonic + 1.0) < 1e-18 * i0) break;
  }
  return -(std::log(0.5 * x) + kEulerGamma) * i0 + sum;
}

// sqrt(x) e^x K0(x) for x > 2.
inline double k0_scaled_sqrt(double x) {
  if (x <= 8.0) return clenshaw(kK0Cheb2to8, (16.0 / x - 5.0) / 3.0);
  return clenshaw(kK0Cheb8up, 16.0 / x - 1.0);
}

}  // namespace detail

/// K0(x) for x > 0. Accurate to ~1e-14 relative; returns 0 once e^{-x}
/// underflows (x > ~745). Throws DomainError for x <= 0 or NaN.
inline double bessel_k0(double x) {
  if (std::isnan(x)) throw DomainError("bessel_k0: NaN argument");
  if (x <= 0.0)
    throw DomainError("bessel_k0: argument must be > 0, got " +
                      std::to_string(x));
  if (x <= 2.0) return detail::k0_series(x);
  return detail::k0_scaled_sqrt(x) * std::exp(-x) / std::sqrt(x);
}

/// e^x K0(x), the exponentially scaled variant. Never underflows; used by
/// the profile integrands to keep exponents bounded.
inline double bessel_k0_scaled(double x) {
  if (std::isnan(x)) throw DomainError("bessel_k0_scaled: NaN argument");
  if (x <= 0.0)
    throw DomainError("bessel_k0_scaled: argument must be > 0, got " +
                      std::to_string(x));
  if (x <= 2.0) return detail::k0_series(x) * std::exp(x);
  return detail::k0_scaled_sqrt(x) / std::sqrt(x);
}

}  // namespace linefront
