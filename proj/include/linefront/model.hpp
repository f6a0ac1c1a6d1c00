#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "linefront/errors.hpp"

// Model parameters and the nondimensionalisation
//   t -> t/k,  x_i -> x_i sqrt(D/k),  u -> u a/sqrt(kD),
// which reduces the production-on-a-line equation
//   du/dt = D Lap u - k u + a theta(u - u_c) delta(y)
// to a single dimensionless threshold alpha = (u_c/a) sqrt(kD).

namespace linefront {

/// The four physical constants. Units: D [length^2/time], k [1/time],
/// a [amount/(length*time)], u_c [amount/length^2].
struct PhysicalParams {
  double D;
  double k;
  double a;
  double u_c;

  void validate() const {
    if (!(D > 0.0) || !std::isfinite(D))
      throw DomainError("PhysicalParams: D must be > 0");
    if (!(k >= 0.0) || !std::isfinite(k))
      throw DomainError("PhysicalParams: k must be >= 0");
    if (!(a > 0.0) || !std::isfinite(a))
      throw DomainError("PhysicalParams: a must be > 0");
    if (!(u_c > 0.0) || !std::isfinite(u_c))
      throw DomainError("PhysicalParams: u_c must be > 0");
  }

  bool zero_degradation() const { return k == 0.0; }
};

struct DimensionlessParams {
  double alpha;  // (u_c/a) sqrt(kD), valid solutions require alpha < 1/2
};

/// The half-plane formulation: production on the line splits evenly, giving
/// the boundary flux condition D du/dy + (a/2) theta(u - u_c) = 0 at y = 0.
struct HalfPlaneBC {
  double flux_coefficient;  // a/2
  double threshold;         // u_c
  double production;        // a
};

enum class FrontRegime { FastForward, Stationary, Backward, NoSolution };

inline const char* to_string(FrontRegime r) {
  switch (r) {
    case FrontRegime::FastForward: return "FastForward";
    case FrontRegime::Stationary: return "Stationary";
    case FrontRegime::Backward: return "Backward";
    case FrontRegime::NoSolution: return "NoSolution";
  }
  return "?";
}

/// alpha = (u_c/a) sqrt(kD). Requires k > 0; the k = 0 limit has its own
/// rescaling and is served by the zero-degradation operations.
inline DimensionlessParams to_dimensionless(const PhysicalParams& p) {
  p.validate();
  if (p.zero_degradation())
    throw ZeroDegradationError(
        "to_dimensionless: k = 0 has no finite alpha; use the "
        "zero-degradation operations (velocity_zero_k, front_profile_zero_k)");
  return DimensionlessParams{p.u_c / p.a * std::sqrt(p.k * p.D)};
}

inline HalfPlaneBC half_plane_bc(const PhysicalParams& p) {
  p.validate();
  return HalfPlaneBC{0.5 * p.a, p.u_c, p.a};
}

/// Classification of the travelling solution by alpha. Velocities from
/// other branches of cot are never returned: alpha >= 1/2 means no solution
/// exists at all (sup of the stationary tail state is 1/2).
inline FrontRegime existence_domain(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("existence_domain: alpha must be > 0");
  if (alpha < 0.25) return FrontRegime::FastForward;
  if (alpha == 0.25) return FrontRegime::Stationary;
  if (alpha < 0.5) return FrontRegime::Backward;
  return FrontRegime::NoSolution;
}

/// The scaling factors of the reparametrisation. Multiplying a dimensionless
/// quantity by the factor yields the physical one.
struct Rescaling {
  double length;         // sqrt(D/k)
  double time;           // 1/k
  double concentration;  // a/sqrt(kD)
  double velocity;       // sqrt(kD)

  static Rescaling from(const PhysicalParams& p) {
    p.validate();
    if (p.zero_degradation())
      throw ZeroDegradationError(
          "Rescaling: k = 0 requires the zero-degradation reparametrisation");
    const double skd = std::sqrt(p.k * p.D);
    return Rescaling{std::sqrt(p.D / p.k), 1.0 / p.k, p.a / skd, skd};
  }
};

inline double rescale_velocity(double v_dimensionless,
                               const PhysicalParams& p) {
  return Rescaling::from(p).velocity * v_dimensionless;
}

/// Wrap a dimensionless profile u'(x', y') into physical units:
/// u(x, y) = (a/sqrt(kD)) u'(x sqrt(k/D), y sqrt(k/D)).
template <class Profile>
auto rescale_solution(Profile u_dimensionless, const PhysicalParams& p) {
  const Rescaling s = Rescaling::from(p);
  return [u = std::move(u_dimensionless), s](double x, double y) {
    return s.concentration * u(x / s.length, y / s.length);
  };
}

}  // namespace linefront
