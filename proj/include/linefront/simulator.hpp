#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "linefront/errors.hpp"
#include "linefront/front.hpp"
#include "linefront/model.hpp"
#include "linefront/quadrature.hpp"

// Independent finite-difference validation of the travelling front: explicit
// Euler on the half-plane y >= 0 with the nonlinear boundary flux
//   D du/dy + (a/2) theta(u - u_c) = 0   at y = 0,
// which is the half-plane equivalent of the delta-line production term. The
// production switch is a sharp nodal threshold (no smoothing), so the front
// position is quantised at O(dx); linear interpolation of the u_c crossing
// recovers sub-grid resolution for the speed fit.

namespace linefront {

struct Grid2D {
  int nx, ny;
  double dx, dy;
  double x0;     // x of column 0; y row 0 is the production boundary
  double y_max;  // y of the top row, (ny - 1) * dy

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return j * dy; }
  double x_end() const { return x(nx - 1); }

  void validate() const {
    if (!(dx > 0.0) || !(dy > 0.0))
      throw DomainError("Grid2D: spacings must be > 0");
    if (nx < 8 || ny < 8) throw DomainError("Grid2D: nx, ny must be >= 8");
    if (std::abs(y_max - (ny - 1) * dy) > 1e-9 * std::max(1.0, y_max))
      throw DomainError("Grid2D: y_max inconsistent with ny, dy");
  }

  static Grid2D make(double x0, double x1, double y_max, double dx,
                     double dy) {
    if (!(x1 > x0)) throw DomainError("Grid2D::make: x1 <= x0");
    const int nx = static_cast<int>(std::floor((x1 - x0) / dx + 0.5)) + 1;
    const int ny = static_cast<int>(std::floor(y_max / dy + 0.5)) + 1;
    Grid2D g{nx, ny, dx, dy, x0, (ny - 1) * dy};
    g.validate();
    return g;
  }
};

struct FieldState {
  Grid2D grid;
  std::vector<double> u;  // row-major, u[j * nx + i]
  double t = 0.0;

  double at(int i, int j) const { return u[static_cast<std::size_t>(j) * grid.nx + i]; }
};

/// Tracked front position on the production line: (t, x_front) samples with
/// strictly increasing timestamps.
struct FrontTrace {
  std::vector<std::pair<double, double>> samples;
};

enum class InitialCondition {
  ExactProfile,    // sampled analytic travelling profile
  StepActivation,  // stationary tail state for x < offset, zero beyond
};

struct SpeedEstimate {
  double v_hat;
  double std_err;
  int n_used;
};

/// Least-squares slope of x_front vs t after discarding the initial
/// transient fraction. Requires >= 10 remaining samples.
inline SpeedEstimate estimate_speed(const FrontTrace& trace,
                                    double discard_fraction = 0.3) {
  if (!(discard_fraction >= 0.0 && discard_fraction < 1.0))
    throw DomainError("estimate_speed: discard_fraction must be in [0, 1)");
  const auto& s = trace.samples;
  const std::size_t start =
      static_cast<std::size_t>(std::floor(s.size() * discard_fraction));
  const std::size_t n = s.size() - start;
  if (n < 10)
    throw InsufficientDataError(
        "estimate_speed: need >= 10 samples after transient discard, have " +
        std::to_string(n));
  double tm = 0, xm = 0;
  for (std::size_t i = start; i < s.size(); ++i) {
    tm += s[i].first;
    xm += s[i].second;
  }
  tm /= n;
  xm /= n;
  double stt = 0, stx = 0;
  for (std::size_t i = start; i < s.size(); ++i) {
    const double dt = s[i].first - tm;
    stt += dt * dt;
    stx += dt * (s[i].second - xm);
  }
  if (stt == 0.0) throw InsufficientDataError("estimate_speed: zero time span");
  const double slope = stx / stt;
  double ss_res = 0;
  for (std::size_t i = start; i < s.size(); ++i) {
    const double r =
        s[i].second - xm - slope * (s[i].first - tm);
    ss_res += r * r;
  }
  const double se =
      (n > 2) ? std::sqrt(ss_res / (static_cast<double>(n - 2) * stt)) : 0.0;
  return SpeedEstimate{slope, se, static_cast<int>(n)};
}

struct RunOptions {
  double t_end = 1.0;
  InitialCondition init = InitialCondition::ExactProfile;
  bool mirror_x = false;      // reflected initial data; front tracked leftward
  double front_offset = 0.0;  // initial front position
  int n_samples = 200;
  double guard_width = -1.0;  // < 0: auto, 10 sqrt(D/k) for k > 0
  QuadraturePolicy policy{};  // for exact-profile sampling
  std::function<void(const FieldState&)> on_sample;  // snapshot hook
};

class HalfPlaneSimulator {
 public:
  HalfPlaneSimulator(const PhysicalParams& p, const Grid2D& grid)
      : p_(p), g_(grid) {
    p_.validate();
    g_.validate();
    state_.grid = g_;
    state_.u.assign(static_cast<std::size_t>(g_.nx) * g_.ny, 0.0);
    next_.assign(state_.u.size(), 0.0);
  }

  /// Largest stable explicit time step.
  double cfl_limit() const {
    return 0.9 /
           (2.0 * p_.D * (1.0 / (g_.dx * g_.dx) + 1.0 / (g_.dy * g_.dy)) +
            p_.k);
  }

  void initialize(InitialCondition init, double front_offset = 0.0,
                  bool mirror_x = false, const QuadraturePolicy& policy = {}) {
    mirror_ = mirror_x;
    const std::size_t nx = g_.nx, ny = g_.ny;
    if (init == InitialCondition::StepActivation) {
      const double decay = std::sqrt(p_.k / p_.D);
      const double amp = 0.5 * p_.a / std::sqrt(p_.k * p_.D);
      for (std::size_t j = 0; j < ny; ++j) {
        const double tail = amp * std::exp(-decay * g_.y(static_cast<int>(j)));
        for (std::size_t i = 0; i < nx; ++i) {
          const double x = g_.x(static_cast<int>(i));
          const bool active = mirror_x ? (x > front_offset) : (x < front_offset);
          state_.u[j * nx + i] = active ? tail : 0.0;
        }
      }
    } else {
      std::vector<double> xs(nx), ys(ny);
      for (std::size_t i = 0; i < nx; ++i)
        xs[i] = mirror_x ? front_offset - g_.x(static_cast<int>(nx - 1 - i))
                         : g_.x(static_cast<int>(i)) - front_offset;
      for (std::size_t j = 0; j < ny; ++j) ys[j] = g_.y(static_cast<int>(j));
      const std::vector<double> vals = profile_grid_physical(p_, xs, ys, policy);
      for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
          state_.u[j * nx + i] =
              vals[j * nx + (mirror_x ? nx - 1 - i : i)];
    }
    state_.t = 0.0;
  }

  void set_field(std::vector<double> u, double t = 0.0) {
    if (u.size() != state_.u.size())
      throw DomainError("set_field: size mismatch");
    state_.u = std::move(u);
    state_.t = t;
  }

  /// One explicit Euler step. Interior: 5-point Laplacian with -ku.
  /// y = 0 row: ghost node eliminating the boundary flux, which turns the
  /// production into a source a * theta(u - u_c) / dy in that row. Far
  /// boundaries are homogeneous Neumann (mirror ghosts).
  void step(double dt) {
    if (!(dt > 0.0)) throw DomainError("step: dt must be > 0");
    if (dt > cfl_limit() * (1.0 + 1e-12))
      throw CflViolationError("step: dt = " + std::to_string(dt) +
                              " exceeds the CFL bound " +
                              std::to_string(cfl_limit()));
    const int nx = g_.nx, ny = g_.ny;
    const double cx = dt * p_.D / (g_.dx * g_.dx);
    const double cy = dt * p_.D / (g_.dy * g_.dy);
    const double decay = 1.0 - dt * p_.k;
    const double src = dt * p_.a / g_.dy;  // ghost-node production density
    const double u_c = p_.u_c;
    const double* u = state_.u.data();
    double* un = next_.data();
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : mn) reduction(max : mx)
#endif
    for (int j = 0; j < ny; ++j) {
      const double* row = u + static_cast<std::size_t>(j) * nx;
      const double* below =
          (j > 0) ? row - nx : u + static_cast<std::size_t>(1) * nx;
      const double* above = (j < ny - 1)
                                ? row + nx
                                : u + static_cast<std::size_t>(ny - 2) * nx;
      double* out = un + static_cast<std::size_t>(j) * nx;
      if (j == 0) {
        // boundary row: ghost node turns the flux condition into a source
        for (int i = 0; i < nx; ++i) {
          const double uij = row[i];
          const double ue = row[i < nx - 1 ? i + 1 : nx - 2];
          const double uw = row[i > 0 ? i - 1 : 1];
          double v = decay * uij + cx * (ue - 2.0 * uij + uw) +
                     2.0 * cy * (above[i] - uij);
          if (uij >= u_c) v += src;
          out[i] = v;
          mn = std::min(mn, v);
          mx = std::max(mx, v);
        }
      } else {
        const bool top = (j == ny - 1);
        // mirror ghosts at the x edges
        {
          const double uij = row[0];
          const double lapy = top ? 2.0 * (below[0] - uij)
                                  : (above[0] - 2.0 * uij + below[0]);
          const double v =
              decay * uij + 2.0 * cx * (row[1] - uij) + cy * lapy;
          out[0] = v;
          mn = std::min(mn, v);
          mx = std::max(mx, v);
        }
        if (top) {
          for (int i = 1; i < nx - 1; ++i) {
            const double uij = row[i];
            const double v = decay * uij +
                             cx * (row[i + 1] - 2.0 * uij + row[i - 1]) +
                             2.0 * cy * (below[i] - uij);
            out[i] = v;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
          }
        } else {
          for (int i = 1; i < nx - 1; ++i) {
            const double uij = row[i];
            const double v = decay * uij +
                             cx * (row[i + 1] - 2.0 * uij + row[i - 1]) +
                             cy * (above[i] - 2.0 * uij + below[i]);
            out[i] = v;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
          }
        }
        {
          const double uij = row[nx - 1];
          const double lapy = top ? 2.0 * (below[nx - 1] - uij)
                                  : (above[nx - 1] - 2.0 * uij + below[nx - 1]);
          const double v =
              decay * uij + 2.0 * cx * (row[nx - 2] - uij) + cy * lapy;
          out[nx - 1] = v;
          mn = std::min(mn, v);
          mx = std::max(mx, v);
        }
      }
    }
    if (!std::isfinite(mn) || !std::isfinite(mx))
      throw NonFiniteError("step: field became non-finite at t = " +
                           std::to_string(state_.t));
    min_u_ = mn;
    state_.u.swap(next_);
    state_.t += dt;
  }

  /// Interpolated u_c crossing on the production line. Default: largest x
  /// with u >= u_c; mirrored runs track the smallest such x instead.
  double front_position() const {
    const int nx = g_.nx;
    const double* row = state_.u.data();
    const double u_c = p_.u_c;
    if (!mirror_) {
      for (int i = nx - 1; i >= 0; --i) {
        if (row[i] >= u_c) {
          if (i == nx - 1) return g_.x(i);
          const double drop = row[i] - row[i + 1];
          return g_.x(i) + (drop > 0.0 ? g_.dx * (row[i] - u_c) / drop : 0.0);
        }
      }
    } else {
      for (int i = 0; i < nx; ++i) {
        if (row[i] >= u_c) {
          if (i == 0) return g_.x(0);
          const double rise = row[i] - row[i - 1];
          return g_.x(i) - (rise > 0.0 ? g_.dx * (row[i] - u_c) / rise : 0.0);
        }
      }
    }
    throw SimulationError("front_position: no point above threshold");
  }

  /// Advance to t_end, recording the front trace and enforcing the guard
  /// band near the x edges.
  FrontTrace run(const RunOptions& opts) {
    if (!(opts.t_end > 0.0)) throw DomainError("run: t_end must be > 0");
    const double dt_max = cfl_limit();
    const long n_steps =
        static_cast<long>(std::ceil(opts.t_end / dt_max - 1e-12));
    const double dt = opts.t_end / static_cast<double>(n_steps);
    const long sample_every =
        std::max<long>(1, n_steps / std::max(1, opts.n_samples));
    double guard = opts.guard_width;
    if (guard < 0.0) guard = (p_.k > 0.0) ? 10.0 * std::sqrt(p_.D / p_.k) : 0.0;

    FrontTrace trace;
    auto record = [&]() {
      const double xf = front_position();
      if (xf < g_.x0 + guard || xf > g_.x_end() - guard)
        throw FrontEscapeError(
            "run: front at x = " + std::to_string(xf) +
            " entered the guard band; the result is invalid");
      if (min_u_ < -1e-12)
        throw SimulationError("run: negative concentration " +
                              std::to_string(min_u_) +
                              " violates the maximum principle");
      trace.samples.emplace_back(state_.t, xf);
      if (opts.on_sample) opts.on_sample(state_);
    };

    min_u_ = 0.0;
    record();
    for (long s = 1; s <= n_steps; ++s) {
      step(dt);
      if (s % sample_every == 0 || s == n_steps) record();
    }
    return trace;
  }

  const FieldState& state() const { return state_; }
  const Grid2D& grid() const { return g_; }
  double min_u() const { return min_u_; }

  /// Trapezoid-weighted discrete mass, the invariant of the pure-diffusion
  /// scheme with mirror ghosts.
  double total_mass() const {
    const int nx = g_.nx, ny = g_.ny;
    double m = 0.0;
    for (int j = 0; j < ny; ++j) {
      const double wy = (j == 0 || j == ny - 1) ? 0.5 : 1.0;
      for (int i = 0; i < nx; ++i) {
        const double wx = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
        m += wx * wy * state_.at(i, j);
      }
    }
    return m * g_.dx * g_.dy;
  }

 private:
  PhysicalParams p_;
  Grid2D g_;
  FieldState state_;
  std::vector<double> next_;
  bool mirror_ = false;
  double min_u_ = 0.0;
};

/// One-call wrapper: build, initialise, run.
inline std::pair<FieldState, FrontTrace> run(const PhysicalParams& p,
                                             const Grid2D& grid,
                                             const RunOptions& opts) {
  HalfPlaneSimulator sim(p, grid);
  sim.initialize(opts.init, opts.front_offset, opts.mirror_x, opts.policy);
  FrontTrace trace = sim.run(opts);
  return {sim.state(), std::move(trace)};
}

}  // namespace linefront
