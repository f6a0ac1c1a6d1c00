#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "linefront/errors.hpp"

// Adaptive quadrature on finite and semi-infinite intervals. The local rule
// is the 15-point Gauss-Kronrod pair; panels are bisected worst-error-first.
// Endpoints flagged as singular (at most logarithmically) receive a graded
// initial mesh so that the error estimate stays honest next to the blow-up.

namespace linefront {

struct QuadraturePolicy {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  // e-folds of integrand decay before a semi-infinite tail is truncated
  double tail_cutoff_decades = 40.0;

  void validate() const {
    if (!(abs_tol >= 0.0)) throw DomainError("QuadraturePolicy: abs_tol < 0");
    if (!(rel_tol > 0.0)) throw DomainError("QuadraturePolicy: rel_tol <= 0");
    if (max_subdivisions < 1)
      throw DomainError("QuadraturePolicy: max_subdivisions < 1");
    if (!(tail_cutoff_decades > 0.0))
      throw DomainError("QuadraturePolicy: tail_cutoff_decades <= 0");
  }
};

struct SingularEndpoints {
  bool left = false;
  bool right = false;
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  long evaluations = 0;
  int panels = 0;
};

namespace detail {

// 15-point Kronrod nodes (positive half, ascending) with the embedded
// 7-point Gauss rule at every other node. 20-digit values.
inline constexpr double kGk15Nodes[8] = {
    0.0,
    0.2077849550078984676,
    0.40584515137739716691,
    0.58608723546769113029,
    0.74153118559939443986,
    0.86486442335976907279,
    0.94910791234275852453,
    0.99145537112081263921,
};
inline constexpr double kGk15WeightsK[8] = {
    0.20948214108472782801, 0.20443294007529889241, 0.19035057806478540991,
    0.16900472663926790283, 0.14065325971552591875, 0.10479001032225018384,
    0.063092092629978553291, 0.022935322010529224964,
};
// Gauss-7 weights for nodes 0, 2, 4, 6 of the table above.
inline constexpr double kGk15WeightsG[4] = {
    0.41795918367346938776,
    0.38183005050511894495,
    0.2797053914892766679,
    0.12948496616886969327,
};

struct Panel {
  double lo, hi;
  double value;
  double err;
  bool operator<(const Panel& other) const { return err < other.err; }
};

template <class F>
Panel gk15(F& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f0 = f(mid);
  double kronrod = kGk15WeightsK[0] * f0;
  double gauss = kGk15WeightsG[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kGk15Nodes[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    kronrod += kGk15WeightsK[i] * fsum;
    if (i % 2 == 0) gauss += kGk15WeightsG[i / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{lo, hi, kronrod, std::abs(kronrod - gauss)};
}

// Panels narrower than this next to their own endpoints would round
// quadrature nodes onto the endpoint itself (the closest Kronrod node sits
// at 0.427% of the panel width).
inline double min_panel_width(double lo, double hi) {
  return 1024.0 * std::numeric_limits<double>::epsilon() *
         std::max(std::abs(lo), std::abs(hi));
}

// Geometrically graded breakpoints approaching a singular endpoint. The
// innermost sliver has relative width 4^-45 ~ 8e-28 (or the representable
// floor, whichever is wider); its contribution for a log singularity is far
// below any achievable tolerance.
inline void grade_towards(double from, double to, std::vector<double>* pts) {
  double w = std::abs(to - from);
  const double sign = (to > from) ? 1.0 : -1.0;
  const double w_min =
      1024.0 * std::numeric_limits<double>::epsilon() * std::abs(from);
  for (int k = 0; k < 45; ++k) {
    w *= 0.25;
    if (w < w_min) break;
    const double p = from + sign * w;
    if (p == from || p == to) break;
    pts->push_back(p);
  }
}

}  // namespace detail

/// Integrate f over [lo, hi]. Endpoint singularities (at most logarithmic)
/// must be flagged; the integrand is never evaluated at panel endpoints.
/// Throws NonConvergenceError (carrying the partial value and estimate) if
/// the subdivision budget is exhausted above tolerance.
template <class F>
QuadResult integrate_finite(F&& f, double lo, double hi,
                            SingularEndpoints sing = {},
                            const QuadraturePolicy& policy = {}) {
  policy.validate();
  if (!(lo < hi)) throw DomainError("integrate_finite: requires lo < hi");
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("integrate_finite: endpoints must be finite");

  std::vector<double> pts{lo, hi};
  if (sing.left && sing.right) pts.push_back(0.5 * (lo + hi));
  if (sing.left) detail::grade_towards(lo, sing.right ? 0.5 * (lo + hi) : hi, &pts);
  if (sing.right) detail::grade_towards(hi, sing.left ? 0.5 * (lo + hi) : lo, &pts);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  QuadResult res;
  std::priority_queue<detail::Panel> heap;
  double total = 0.0, total_err = 0.0;
  int parked = 0;  // panels at roundoff width, kept in the totals only
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    detail::Panel p = detail::gk15(f, pts[i], pts[i + 1]);
    res.evaluations += 15;
    total += p.value;
    total_err += p.err;
    heap.push(p);
  }

  while (!heap.empty()) {
    const double tol =
        std::max(policy.abs_tol, policy.rel_tol * std::abs(total));
    if (total_err <= tol) break;
    if (static_cast<int>(heap.size()) + parked >= policy.max_subdivisions) {
      throw NonConvergenceError(
          "integrate_finite: error estimate " + std::to_string(total_err) +
              " above tolerance " + std::to_string(tol) + " after " +
              std::to_string(heap.size() + parked) + " panels",
          total, total_err);
    }
    detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi) ||
        worst.hi - worst.lo < detail::min_panel_width(worst.lo, worst.hi)) {
      heap.pop();  // cannot be split further; its error stays in the total
      ++parked;
      continue;
    }
    heap.pop();
    detail::Panel left = detail::gk15(f, worst.lo, mid);
    detail::Panel right = detail::gk15(f, mid, worst.hi);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }

  res.value = total;
  res.err_est = total_err;
  res.panels = static_cast<int>(heap.size()) + parked;
  return res;
}

/// Integrate f over [lo, +inf) given that |f| decays at least like
/// e^{-decay_rate * x}. The tail beyond lo + tail_cutoff_decades/decay_rate
/// is truncated; a bound on the discarded part enters err_est. Throws
/// TailDivergenceError if decay_rate <= 0.
template <class F>
QuadResult integrate_semi_infinite(F&& f, double lo, double decay_rate,
                                   const QuadraturePolicy& policy = {},
                                   bool singular_lo = false) {
  policy.validate();
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate))
    throw TailDivergenceError(
        "integrate_semi_infinite: nonpositive decay rate " +
        std::to_string(decay_rate) + "; the integral diverges");
  const double cutoff = lo + policy.tail_cutoff_decades / decay_rate;
  const double tail_bound = 2.0 * std::abs(f(cutoff)) / decay_rate;
  QuadResult res = integrate_finite(f, lo, cutoff,
                                    SingularEndpoints{singular_lo, false},
                                    policy);
  res.evaluations += 1;
  res.err_est += tail_bound;
  return res;
}

}  // namespace linefront
