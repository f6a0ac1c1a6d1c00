#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "linefront/bessel.hpp"
#include "linefront/errors.hpp"
#include "linefront/model.hpp"
#include "linefront/quadrature.hpp"
#include "linefront/roots.hpp"

// Travelling-front and stationary solutions of the production-on-a-line
// equation. Everything is built from one convolution kernel, the decaying
// fundamental solution of the comoving operator Lap - v d/dx - Id:
//   Phi(x, y) = (1/2pi) K0(b sqrt(x^2 + y^2)) e^{-c x},
// with b = sqrt(1 + v^2/4) and c = v/2, so that b^2 - c^2 = 1.

namespace linefront {

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// True integrable log singularity of K0 at argument 0 (up to fp fuzz).
inline bool near_singular(double kernel_scale, double s, double y) {
  return kernel_scale * std::hypot(s, y) < 1e-8;
}

// integral over [lo, hi] of K0(B sqrt(s^2 + y^2)) e^{-C s} ds, hi may be
// +inf. Evaluated in exponentially scaled form so that backward fronts and
// far-behind evaluations never overflow: the full exponent is
// -B r - C s <= -(B - |C|) |s|, bounded whenever B > |C|.
inline QuadResult kernel_line_integral(double B, double C, double lo,
                                       double hi, double y,
                                       const QuadraturePolicy& policy) {
  if (!(B > 0.0)) throw DomainError("kernel_line_integral: B must be > 0");
  y = std::abs(y);
  auto f = [B, C, y](double s) {
    const double r = std::hypot(s, y);
    return bessel_k0_scaled(B * r) * std::exp(-B * r - C * s);
  };

  QuadResult total;
  auto accumulate = [&total](const QuadResult& r) {
    total.value += r.value;
    total.err_est += r.err_est;
    total.evaluations += r.evaluations;
    total.panels += r.panels;
  };

  const bool infinite = std::isinf(hi);
  const double hi_eff = infinite ? std::numeric_limits<double>::max() : hi;
  if (!(lo < hi_eff)) throw DomainError("kernel_line_integral: lo >= hi");

  // Always split at s = 0, where the K0 argument is smallest; for y at (or
  // numerically at) the production line this is a log singularity.
  const bool split0 = lo < 0.0 && 0.0 < hi_eff;
  if (split0) {
    accumulate(integrate_finite(
        f, lo, 0.0,
        SingularEndpoints{near_singular(B, lo, y), near_singular(B, 0.0, y)},
        policy));
  }
  const double seg_lo = split0 ? 0.0 : lo;
  if (infinite) {
    accumulate(integrate_semi_infinite(f, seg_lo, B + C, policy,
                                       near_singular(B, seg_lo, y)));
  } else {
    accumulate(integrate_finite(f, seg_lo, hi,
                                SingularEndpoints{near_singular(B, seg_lo, y),
                                                  near_singular(B, hi, y)},
                                policy));
  }
  return total;
}

}  // namespace detail

/// Stationary x-translation invariant solution of the dimensionless
/// equation, the tail state behind the front: u(y) = e^{-|y|}/2.
inline double stationary_profile(double y) { return 0.5 * std::exp(-std::abs(y)); }

/// Closed-form dimensionless velocity, v = 2 cot(2 pi alpha), valid on
/// alpha in (0, 1/2) only. alpha = 1/4 returns exactly 0. Throws
/// NoSolutionError for alpha >= 1/2 (cot is periodic, but other branches
/// are unphysical and never returned).
inline double velocity_dimensionless(double alpha) {
  const FrontRegime regime = existence_domain(alpha);
  if (regime == FrontRegime::NoSolution)
    throw NoSolutionError("velocity_dimensionless: alpha = " +
                          std::to_string(alpha) +
                          " >= 1/2, no travelling or stationary solution");
  if (alpha == 0.25) return 0.0;
  const double t = detail::kTwoPi * alpha;
  return 2.0 * std::cos(t) / std::sin(t);
}

/// Velocity in physical units, v = 2 sqrt(kD) cot(2 pi u_c sqrt(kD) / a).
inline double velocity_physical(const PhysicalParams& p) {
  const DimensionlessParams d = to_dimensionless(p);  // ZeroDegradation if k=0
  return std::sqrt(p.k * p.D) * velocity_dimensionless(d.alpha);
}

/// Zero-degradation limit of the velocity: v0 = a / (pi u_c). Independent
/// of the diffusion coefficient.
inline double velocity_zero_k(const PhysicalParams& p) {
  p.validate();
  if (!p.zero_degradation())
    throw DomainError("velocity_zero_k: requires k = 0, got k = " +
                      std::to_string(p.k));
  return p.a / (std::numbers::pi * p.u_c);
}

/// The exact travelling profile in dimensionless form, together with its
/// velocity and quadrature policy. Shift convention: the production region
/// is (-inf, 0], so u(0, 0) = alpha.
struct FrontSolution {
  double alpha;
  double velocity;
  double b;  // sqrt(1 + v^2/4)
  double c;  // v/2
  QuadraturePolicy policy;

  static FrontSolution from_alpha(double alpha, QuadraturePolicy pol = {}) {
    const double v = velocity_dimensionless(alpha);  // validates alpha
    return FrontSolution{alpha, v, std::sqrt(1.0 + 0.25 * v * v), 0.5 * v,
                         pol};
  }

  /// Inverse map: alpha = arccos(c/b) / (2 pi).
  static FrontSolution from_velocity(double v, QuadraturePolicy pol = {}) {
    if (!std::isfinite(v)) throw DomainError("FrontSolution: v not finite");
    const double b = std::sqrt(1.0 + 0.25 * v * v);
    const double c = 0.5 * v;
    const double alpha = (v == 0.0) ? 0.25 : std::acos(c / b) / detail::kTwoPi;
    return FrontSolution{alpha, v, b, c, pol};
  }

  double operator()(double x, double y) const;
};

/// u(x, y) = (1/2pi) integral_x^inf K0(b sqrt(s^2+y^2)) e^{-c s} ds.
/// Even in y; the interior log singularity at s = 0 (y = 0, x < 0) is
/// handled by splitting and graded meshes.
inline double front_profile(const FrontSolution& sol, double x, double y) {
  const QuadResult r = detail::kernel_line_integral(
      sol.b, sol.c, x, std::numeric_limits<double>::infinity(), y, sol.policy);
  return r.value / detail::kTwoPi;
}

inline double FrontSolution::operator()(double x, double y) const {
  return front_profile(*this, x, y);
}

/// Quadrature residual of the implicit velocity condition u(0,0) = alpha:
///   integral_0^inf e^{-v s/2} K0(s sqrt(1+v^2/4)) ds - 2 pi alpha.
/// Vanishes at v = velocity_dimensionless(alpha); this is the independent
/// cross-check of the closed form against the defining integral.
inline double velocity_implicit_residual(double alpha, double v,
                                         const QuadraturePolicy& policy = {}) {
  if (!std::isfinite(v))
    throw DomainError("velocity_implicit_residual: v not finite");
  const double b = std::sqrt(1.0 + 0.25 * v * v);
  const QuadResult r = detail::kernel_line_integral(
      b, 0.5 * v, 0.0, std::numeric_limits<double>::infinity(), 0.0, policy);
  return r.value - detail::kTwoPi * alpha;
}

/// Decaying fundamental solution of the comoving operator,
/// Phi = (1/2pi) K0(b r) e^{-c x}. Throws at the origin.
inline double fundamental_solution(double x, double y, double v) {
  const double r = std::hypot(x, y);
  if (r == 0.0)
    throw DomainError("fundamental_solution: logarithmic singularity at the "
                      "origin");
  const double b = std::sqrt(1.0 + 0.25 * v * v);
  const double c = 0.5 * v;
  return bessel_k0_scaled(b * r) * std::exp(-b * r - c * x) / detail::kTwoPi;
}

/// Travelling profile in physical units, evaluated directly:
///   u(x,y) = (a / 2 pi D) integral_x^inf
///            K0( sqrt(s^2+y^2) sqrt(4kD+v^2) / (2D) ) e^{-v s / (2D)} ds.
inline double front_profile_physical(const PhysicalParams& p, double x,
                                     double y,
                                     const QuadraturePolicy& policy = {}) {
  const double v = velocity_physical(p);  // validates, k > 0, alpha < 1/2
  const double B = std::sqrt(4.0 * p.k * p.D + v * v) / (2.0 * p.D);
  const double C = v / (2.0 * p.D);
  const QuadResult r = detail::kernel_line_integral(
      B, C, x, std::numeric_limits<double>::infinity(), y, policy);
  return p.a / (detail::kTwoPi * p.D) * r.value;
}

/// Zero-degradation travelling profile (k = 0, v = v0 = a/(pi u_c)): the
/// kernel argument loses the +1, B = C = v0/(2D). The profile grows without
/// bound as x -> -inf (it connects the trivial state with infinity);
/// evaluations at finite x are finite and returned as such.
inline double front_profile_zero_k(const PhysicalParams& p, double x, double y,
                                   const QuadraturePolicy& policy = {}) {
  const double v = velocity_zero_k(p);
  const double BC = v / (2.0 * p.D);
  const QuadResult r = detail::kernel_line_integral(
      BC, BC, x, std::numeric_limits<double>::infinity(), y, policy);
  return p.a / (detail::kTwoPi * p.D) * r.value;
}

// ---------------------------------------------------------------------------
// Homoclinic stationary solution: production on a finite interval [-z, z].
// ---------------------------------------------------------------------------

/// u_z(x, y) = (1/2pi) integral_{-z}^{z} K0(sqrt((x-t)^2 + y^2)) dt,
/// the stationary bump generated by production on [-z, z].
inline double homoclinic_profile(double zeta, double x, double y,
                                 const QuadraturePolicy& policy = {}) {
  if (!(zeta > 0.0)) throw DomainError("homoclinic_profile: zeta must be > 0");
  // substitute s = x - t
  const QuadResult r =
      detail::kernel_line_integral(1.0, 0.0, x - zeta, x + zeta, y, policy);
  return r.value / detail::kTwoPi;
}

struct HomoclinicSolution {
  double zeta;   // half-width of the production interval, smallest root
  double alpha;
  std::vector<double> all_roots;  // every threshold root found by the scan
  double interior_value;          // u(0, 0), must exceed alpha
};

/// Threshold residual g(z) = u_z(z, 0) - alpha. By the substitution above,
/// u_z(z, 0) = (1/2pi) integral_0^{2z} K0(s) ds.
inline double homoclinic_threshold_residual(double zeta, double alpha,
                                            const QuadraturePolicy& policy = {}) {
  if (!(zeta > 0.0))
    throw DomainError("homoclinic_threshold_residual: zeta must be > 0");
  const QuadResult r =
      detail::kernel_line_integral(1.0, 0.0, 0.0, 2.0 * zeta, 0.0, policy);
  return r.value / detail::kTwoPi - alpha;
}

/// Solve u_z(z, 0) = alpha for the production half-width. Exists for
/// alpha in (0, 1/4), i.e. whenever the travelling front advances. All sign
/// changes found by the scan are reported; the smallest root is returned.
inline HomoclinicSolution homoclinic_find(double alpha,
                                          const QuadraturePolicy& policy = {}) {
  if (existence_domain(alpha) == FrontRegime::NoSolution)
    throw NoSolutionError("homoclinic_find: alpha = " + std::to_string(alpha) +
                          " >= 1/2");
  if (!(alpha < 0.25))
    throw DomainError(
        "homoclinic_find: the homoclinic solution exists for alpha < 1/4, "
        "got alpha = " + std::to_string(alpha));

  auto g = [alpha, &policy](double z) {
    return homoclinic_threshold_residual(z, alpha, policy);
  };

  // g is negative at 0+ (residual -> -alpha) and tends to 1/4 - alpha > 0.
  const double scan_hi = 20.0;
  const double scan_step = 0.05;
  std::vector<double> roots;
  double z_prev = 1e-9;
  double g_prev = g(z_prev);
  for (double z = scan_step; z <= scan_hi + 0.5 * scan_step; z += scan_step) {
    const double gz = g(z);
    if (g_prev == 0.0) {
      roots.push_back(z_prev);
    } else if (g_prev * gz < 0.0) {
      roots.push_back(find_root(
          g, RootBracket::from_evaluated(z_prev, z, g_prev, gz), 1e-12));
    }
    z_prev = z;
    g_prev = gz;
  }
  if (roots.empty())
    throw NoBracketError(
        "homoclinic_find: no threshold crossing on (0, 20] for alpha = " +
        std::to_string(alpha) + "; residual at 20 = " + std::to_string(g_prev));

  const double zeta = roots.front();
  const double interior = homoclinic_profile(zeta, 0.0, 0.0, policy);
  if (!(interior > alpha))
    throw Error("homoclinic_find: interior condition u(0,0) > alpha failed");
  return HomoclinicSolution{zeta, alpha, std::move(roots), interior};
}

// ---------------------------------------------------------------------------
// Classical 1D comparison front (production everywhere, not on a line).
// ---------------------------------------------------------------------------

/// Piecewise-exponential travelling solution of
/// du/dt = D u'' + a theta(u - u_c) - k u.
struct ClassicalFront {
  double velocity;
  double lambda_plus;   // > 0 root of D l^2 + v l - k = 0 (k = 0: 0)
  double lambda_minus;  // < 0 root
};

/// C^1 matching residual of the comoving piecewise profile at the threshold
/// point: ahead u = u_c e^{lambda_- x}, behind u = a/k + (u_c - a/k)
/// e^{lambda_+ x}; matching slopes requires u_c lambda_- = (u_c - a/k)
/// lambda_+. Zero exactly at the travelling velocity.
inline double classical_matching_residual(const PhysicalParams& p, double v) {
  const double disc = std::sqrt(v * v + 4.0 * p.k * p.D);
  const double lam_plus = (-v + disc) / (2.0 * p.D);
  const double lam_minus = (-v - disc) / (2.0 * p.D);
  return p.u_c * lam_minus - (p.u_c - p.a / p.k) * lam_plus;
}

/// Velocity of the classical front. For k = 0 the exact value is
/// sqrt(a D / u_c); for k > 0 the matching condition is solved by Brent's
/// method (requires the bistable regime a/k > u_c).
inline ClassicalFront classical_velocity(const PhysicalParams& p) {
  p.validate();
  if (p.zero_degradation()) {
    const double v = std::sqrt(p.a * p.D / p.u_c);
    return ClassicalFront{v, 0.0, -v / p.D};
  }
  if (!(p.a / p.k > p.u_c))
    throw DomainError(
        "classical_velocity: requires the bistable regime a/k > u_c");

  auto residual = [&p](double v) { return classical_matching_residual(p, v); };
  const double r0 = residual(0.0);
  double v = 0.0;
  if (r0 != 0.0) {
    // R is decreasing in v; expand the bracket away from 0 on the side the
    // sign indicates.
    const double dir = (r0 > 0.0) ? 1.0 : -1.0;
    double hi = dir * std::max(std::sqrt(p.k * p.D), std::sqrt(p.a * p.D / p.u_c));
    int guard = 0;
    while (residual(hi) * r0 > 0.0) {
      hi *= 2.0;
      if (++guard > 100)
        throw NoBracketError("classical_velocity: failed to bracket the "
                             "matching velocity");
    }
    const auto br = (dir > 0.0) ? bracket_root(residual, 0.0, hi)
                                : bracket_root(residual, hi, 0.0);
    v = find_root(residual, br, 1e-13 * std::max(1.0, std::abs(hi)));
  }
  const double disc = std::sqrt(v * v + 4.0 * p.k * p.D);
  return ClassicalFront{v, (-v + disc) / (2.0 * p.D),
                        (-v - disc) / (2.0 * p.D)};
}

// ---------------------------------------------------------------------------
// Leading-edge asymptotics: u(x, 0) ~ e^{-gamma x} / x^power, power ~ 1/2.
// ---------------------------------------------------------------------------

struct DecayFit {
  double gamma;
  double power;
  double log_prefactor;
  int n_used;
};

/// Log-linear least squares of log u(x,0) = log_prefactor - gamma x
/// - power ln x over the given samples. Samples with u below 1e-280 are
/// excluded (underflow guard). Expect gamma ~ b + c.
inline DecayFit leading_edge_decay(const FrontSolution& sol,
                                   std::span<const double> x_samples) {
  double s_xx = 0, s_xl = 0, s_x = 0, s_ll = 0, s_l = 0, s_1 = 0;
  double r_x = 0, r_l = 0, r_1 = 0;
  int n = 0;
  for (double x : x_samples) {
    if (!(x > 0.0)) continue;
    const double u = front_profile(sol, x, 0.0);
    if (!(u > 1e-280) || !std::isfinite(u)) continue;
    const double yv = std::log(u);
    const double lx = std::log(x);
    s_xx += x * x;  s_xl += x * lx;  s_x += x;
    s_ll += lx * lx;  s_l += lx;  s_1 += 1.0;
    r_x += x * yv;  r_l += lx * yv;  r_1 += yv;
    ++n;
  }
  if (n < 3)
    throw InsufficientDataError(
        "leading_edge_decay: need at least 3 usable samples, got " +
        std::to_string(n));

  // Normal equations for beta = (gamma, power, log_prefactor) with model
  // y = -gamma x - power ln x + log_prefactor.
  const double A[3][3] = {{s_xx, s_xl, -s_x},
                          {s_xl, s_ll, -s_l},
                          {-s_x, -s_l, s_1}};
  const double rhs[3] = {-r_x, -r_l, r_1};
  const double det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                     A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                     A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
  if (det == 0.0)
    throw InsufficientDataError("leading_edge_decay: degenerate sample set");
  auto solve_col = [&](int col) {
    double M[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M[i][j] = (j == col) ? rhs[i] : A[i][j];
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
            M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
            M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])) /
           det;
  };
  return DecayFit{solve_col(0), solve_col(1), solve_col(2), n};
}

/// Log-spaced sample locations spanning one decade of the far leading edge.
inline std::vector<double> default_leading_edge_samples(double gamma_expected,
                                                        int n = 12) {
  if (!(gamma_expected > 0.0) || n < 3)
    throw DomainError("default_leading_edge_samples: bad arguments");
  std::vector<double> xs(n);
  const double lo = 10.0 / gamma_expected;
  for (int i = 0; i < n; ++i)
    xs[i] = lo * std::pow(10.0, static_cast<double>(i) / (n - 1));
  return xs;
}

// ---------------------------------------------------------------------------
// Tensor-grid evaluation (row-accumulated): the per-point semi-infinite
// integral is computed once per row at the right edge, then extended
// leftward with short finite panels. Rows are independent.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> convolution_grid(double B, double C,
                                            double prefactor,
                                            std::span<const double> xs,
                                            std::span<const double> ys,
                                            const QuadraturePolicy& policy) {
  const std::size_t nx = xs.size(), ny = ys.size();
  for (std::size_t i = 0; i + 1 < nx; ++i)
    if (!(xs[i] < xs[i + 1]))
      throw DomainError("convolution_grid: xs must be strictly increasing");
  std::vector<double> out(nx * ny);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long jj = 0; jj < static_cast<long>(ny); ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj);
    const double y = ys[j];
    double acc = kernel_line_integral(
                     B, C, xs[nx - 1],
                     std::numeric_limits<double>::infinity(), y, policy)
                     .value;
    out[j * nx + (nx - 1)] = prefactor * acc;
    for (std::size_t i = nx - 1; i-- > 0;) {
      acc += kernel_line_integral(B, C, xs[i], xs[i + 1], y, policy).value;
      out[j * nx + i] = prefactor * acc;
    }
  }
  return out;
}

}  // namespace detail

/// Dimensionless profile on a tensor grid, row-major [iy * nx + ix].
inline std::vector<double> profile_grid(const FrontSolution& sol,
                                        std::span<const double> xs,
                                        std::span<const double> ys) {
  return detail::convolution_grid(sol.b, sol.c, 1.0 / detail::kTwoPi, xs, ys,
                                  sol.policy);
}

/// Physical-units profile on a tensor grid (Eq. of the wave profile in
/// original units evaluated directly).
inline std::vector<double> profile_grid_physical(
    const PhysicalParams& p, std::span<const double> xs,
    std::span<const double> ys, const QuadraturePolicy& policy = {}) {
  const double v = velocity_physical(p);
  const double B = std::sqrt(4.0 * p.k * p.D + v * v) / (2.0 * p.D);
  const double C = v / (2.0 * p.D);
  return detail::convolution_grid(B, C, p.a / (detail::kTwoPi * p.D), xs, ys,
                                  policy);
}

/// Zero-degradation profile on a tensor grid.
inline std::vector<double> profile_grid_zero_k(
    const PhysicalParams& p, std::span<const double> xs,
    std::span<const double> ys, const QuadraturePolicy& policy = {}) {
  const double v = velocity_zero_k(p);
  const double BC = v / (2.0 * p.D);
  return detail::convolution_grid(BC, BC, p.a / (detail::kTwoPi * p.D), xs, ys,
                                  policy);
}

}  // namespace linefront
