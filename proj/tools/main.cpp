// linefront: compute travelling-front velocities and profiles of the
// production-on-a-line reaction-diffusion model, run the finite-difference
// cross-check, and export plot-ready CSV/SVG data.
//
// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linefront/linefront.hpp"
#include "linefront/selftest.hpp"

namespace lf = linefront;

namespace {

struct CommonOpts {
  std::optional<double> D, k, a, uc, alpha;
  std::string config_path;
  std::string out = "linefront";
  double rel_tol = 1e-10;
  bool svg = false;
};

struct GridSpec {
  double x0 = -4.0, x1 = 2.0;
  int nx = 121;
  double y0 = 0.0, y1 = 3.0;
  int ny = 61;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d,%lf:%lf:%d", &g.x0, &g.x1, &g.nx,
                  &g.y0, &g.y1, &g.ny) != 6)
    throw lf::DomainError("--grid expects X0:X1:NX,Y0:Y1:NY, got '" + s + "'");
  if (!(g.x0 < g.x1) || !(g.y0 < g.y1) || g.nx < 2 || g.ny < 2)
    throw lf::DomainError("--grid: empty or degenerate ranges in '" + s + "'");
  return g;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

// Parameters come from an optional JSON config file ({"D":..,"k":..,"a":..,
// "u_c":..}); explicit flags override the file.
void apply_config(CommonOpts& o) {
  if (o.config_path.empty()) return;
  std::ifstream in(o.config_path);
  if (!in)
    throw lf::DomainError("cannot open config file '" + o.config_path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw lf::DomainError("config parse error: " + std::string(e.what()));
  }
  auto take = [&j](const char* key, std::optional<double>& slot) {
    if (slot.has_value()) return;  // flag wins
    if (j.contains(key)) slot = j.at(key).get<double>();
  };
  take("D", o.D);
  take("k", o.k);
  take("a", o.a);
  take("u_c", o.uc);
  take("alpha", o.alpha);
}

bool has_physical(const CommonOpts& o) {
  return o.D && o.k && o.a && o.uc;
}

lf::PhysicalParams physical(const CommonOpts& o) {
  if (!has_physical(o))
    throw lf::DomainError(
        "physical parameters required: provide all of --D --k --a --uc "
        "(or a config file)");
  lf::PhysicalParams p{*o.D, *o.k, *o.a, *o.uc};
  p.validate();
  return p;
}

lf::QuadraturePolicy policy_of(const CommonOpts& o) {
  lf::QuadraturePolicy pol;
  pol.rel_tol = o.rel_tol;
  pol.validate();
  return pol;
}

void add_param_flags(CLI::App* cmd, CommonOpts& o, bool with_alpha = true) {
  cmd->add_option("--D", o.D, "diffusion coefficient [length^2/time]");
  cmd->add_option("--k", o.k, "degradation rate [1/time], k = 0 allowed");
  cmd->add_option("--a", o.a,
                  "maximal production surface density rate "
                  "[amount/(length*time)]");
  cmd->add_option("--uc", o.uc, "threshold concentration [amount/length^2]");
  if (with_alpha)
    cmd->add_option("--alpha", o.alpha,
                    "dimensionless threshold (dimensionless mode)");
  cmd->add_option("--config", o.config_path,
                  "JSON file with {D, k, a, u_c}; flags override");
  cmd->add_option("--out", o.out, "output path prefix");
  cmd->add_option("--tol", o.rel_tol, "quadrature relative tolerance");
  cmd->add_flag("--svg", o.svg, "also write dependency-free SVG plots");
}

std::string fmt(double v) { return lf::format_double(v); }

// ---------------------------------------------------------------------------

int cmd_velocity(CommonOpts& o) {
  apply_config(o);
  const lf::QuadraturePolicy pol = policy_of(o);
  double alpha;
  if (o.alpha) {
    alpha = *o.alpha;
  } else {
    const lf::PhysicalParams p = physical(o);
    if (p.zero_degradation()) {
      const double v0 = lf::velocity_zero_k(p);
      std::cout << "zero-degradation limit (k = 0)\n"
                << "v0 = a/(pi*u_c) = " << fmt(v0) << "\n"
                << "note: v0 does not depend on the diffusion coefficient D ("
                << fmt(p.D) << " ignored)\n";
      return 0;
    }
    alpha = lf::to_dimensionless(p).alpha;
  }
  const lf::FrontRegime regime = lf::existence_domain(alpha);
  std::cout << "alpha = " << fmt(alpha) << "\n"
            << "classification = " << lf::to_string(regime) << "\n";
  const double v = lf::velocity_dimensionless(alpha);  // NoSolution if >= 1/2
  std::cout << "v_dimensionless = " << fmt(v) << "\n";
  if (!o.alpha) {
    const lf::PhysicalParams p = physical(o);
    std::cout << "v_physical = " << fmt(lf::velocity_physical(p)) << "\n";
  }
  std::cout << "eq_residual(u(0,0) = alpha) = "
            << fmt(lf::velocity_implicit_residual(alpha, v, pol)) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct GridData {
  std::vector<double> xs, ys, u;
  long failures = 0;
};

// Fast row-accumulated evaluation with a pointwise fallback so isolated
// quadrature failures are counted per point, not fatal.
GridData evaluate_grid(const CommonOpts& o, const GridSpec& g,
                       const lf::QuadraturePolicy& pol, double* v_out,
                       double* alpha_out) {
  GridData d;
  d.xs = linspace(g.x0, g.x1, g.nx);
  d.ys = linspace(g.y0, g.y1, g.ny);
  auto pointwise = [&](double x, double y) -> double {
    if (o.alpha) {
      const auto sol = lf::FrontSolution::from_alpha(*o.alpha, pol);
      return lf::front_profile(sol, x, y);
    }
    const lf::PhysicalParams p = physical(o);
    return p.zero_degradation() ? lf::front_profile_zero_k(p, x, y, pol)
                                : lf::front_profile_physical(p, x, y, pol);
  };
  try {
    if (o.alpha) {
      const auto sol = lf::FrontSolution::from_alpha(*o.alpha, pol);
      *v_out = sol.velocity;
      *alpha_out = sol.alpha;
      d.u = lf::profile_grid(sol, d.xs, d.ys);
    } else {
      const lf::PhysicalParams p = physical(o);
      if (p.zero_degradation()) {
        *v_out = lf::velocity_zero_k(p);
        *alpha_out = std::numeric_limits<double>::quiet_NaN();
        d.u = lf::profile_grid_zero_k(p, d.xs, d.ys, pol);
      } else {
        *v_out = lf::velocity_physical(p);
        *alpha_out = lf::to_dimensionless(p).alpha;
        d.u = lf::profile_grid_physical(p, d.xs, d.ys, pol);
      }
    }
  } catch (const lf::NonConvergenceError&) {
    // fall back to per-point evaluation, recording failures as NaN
    d.u.assign(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        try {
          d.u[static_cast<std::size_t>(j) * g.nx + i] =
              pointwise(d.xs[i], d.ys[j]);
        } catch (const lf::NonConvergenceError&) {
          d.u[static_cast<std::size_t>(j) * g.nx + i] =
              std::numeric_limits<double>::quiet_NaN();
          ++d.failures;
        }
      }
    }
  }
  return d;
}

void meta_params(lf::CsvWriter& csv, const CommonOpts& o) {
  if (o.alpha) {
    csv.meta("alpha", *o.alpha);
  } else {
    csv.meta("D", *o.D);
    csv.meta("k", *o.k);
    csv.meta("a", *o.a);
    csv.meta("u_c", *o.uc);
  }
  csv.meta("rel_tol", o.rel_tol);
}

int cmd_profile(CommonOpts& o, const std::string& grid_str) {
  apply_config(o);
  const lf::QuadraturePolicy pol = policy_of(o);
  const GridSpec g = parse_grid(grid_str);
  if (!o.alpha) physical(o);  // validate early, before any file is written

  double v = 0.0, alpha = 0.0;
  const GridData d = evaluate_grid(o, g, pol, &v, &alpha);

  lf::CsvWriter grid_csv;
  meta_params(grid_csv, o);
  grid_csv.meta("alpha_derived", alpha);
  grid_csv.meta("velocity", v);
  grid_csv.meta("grid", grid_str);
  grid_csv.meta("quadrature_failures", static_cast<double>(d.failures));
  grid_csv.header({"x", "y", "u"});
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      grid_csv.row({d.xs[i], d.ys[j],
                    d.u[static_cast<std::size_t>(j) * g.nx + i]});
  grid_csv.write_to(o.out + "_grid.csv");

  // u(x, 0) line, evaluated on the same xs
  GridSpec gl = g;
  gl.y0 = 0.0;
  gl.y1 = 1.0;
  gl.ny = 2;
  double v2, a2;
  GridData line = evaluate_grid(o, gl, pol, &v2, &a2);
  lf::CsvWriter line_csv;
  meta_params(line_csv, o);
  line_csv.meta("velocity", v);
  line_csv.header({"x", "u"});
  for (int i = 0; i < g.nx; ++i) line_csv.row({line.xs[i], line.u[i]});
  line_csv.write_to(o.out + "_line.csv");

  if (o.svg) {
    std::ofstream(o.out + "_grid.svg")
        << lf::svg::heatmap(d.xs, d.ys, d.u, 12, "concentration u(x, y)");
    std::vector<double> row0(line.u.begin(), line.u.begin() + g.nx);
    std::ofstream(o.out + "_line.svg")
        << lf::svg::line_chart(line.xs, row0, "u(x, 0)", "x", "u");
  }
  std::cout << "wrote " << o.out << "_grid.csv (" << g.nx << "x" << g.ny
            << " points), " << o.out << "_line.csv";
  if (o.svg) std::cout << ", SVG plots";
  std::cout << "\nquadrature failures: " << d.failures + line.failures << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_simulate(CommonOpts& o, const std::string& grid_str, double t_end,
                 const std::string& init_str, bool mirror, int samples,
                 int snapshots, double discard, double guard) {
  apply_config(o);
  const lf::PhysicalParams p = physical(o);
  const GridSpec gs = parse_grid(grid_str);
  if (gs.y0 != 0.0)
    throw lf::DomainError("simulate: grid must start at y0 = 0 "
                          "(production boundary)");
  const lf::Grid2D grid =
      lf::Grid2D::make(gs.x0, gs.x1, gs.y1, (gs.x1 - gs.x0) / (gs.nx - 1),
                       gs.y1 / (gs.ny - 1));

  lf::RunOptions opts;
  opts.t_end = t_end;
  opts.n_samples = samples;
  opts.mirror_x = mirror;
  opts.guard_width = guard;
  opts.policy = policy_of(o);
  if (init_str == "exact")
    opts.init = lf::InitialCondition::ExactProfile;
  else if (init_str == "step")
    opts.init = lf::InitialCondition::StepActivation;
  else
    throw lf::DomainError("simulate: --init must be 'exact' or 'step'");

  const double v_analytic =
      (p.zero_degradation() ? lf::velocity_zero_k(p)
                            : lf::velocity_physical(p)) *
      (mirror ? -1.0 : 1.0);

  std::vector<std::pair<double, lf::FieldState>> snaps;
  int sample_count = 0;
  if (snapshots > 0) {
    opts.on_sample = [&](const lf::FieldState& s) {
      if (sample_count++ % std::max(1, samples / snapshots) == 0)
        snaps.emplace_back(s.t, s);
    };
  }

  lf::HalfPlaneSimulator sim(p, grid);
  sim.initialize(opts.init, opts.front_offset, opts.mirror_x, opts.policy);
  const double dt = sim.cfl_limit();
  const lf::FrontTrace trace = sim.run(opts);
  const lf::SpeedEstimate est = lf::estimate_speed(trace, discard);

  auto meta_sim = [&](lf::CsvWriter& csv) {
    csv.meta("D", p.D);
    csv.meta("k", p.k);
    csv.meta("a", p.a);
    csv.meta("u_c", p.u_c);
    csv.meta("rel_tol", o.rel_tol);
    csv.meta("grid", grid_str);
    csv.meta("dt_cfl", dt);
    csv.meta("t_end", t_end);
    csv.meta("scheme", "explicit Euler, 5-point Laplacian, ghost-node "
                       "boundary flux, Neumann far field");
    csv.meta("init", init_str + (mirror ? " (mirrored)" : ""));
  };

  lf::CsvWriter trace_csv;
  meta_sim(trace_csv);
  trace_csv.header({"t", "x_front"});
  for (const auto& [t, x] : trace.samples) trace_csv.row({t, x});
  trace_csv.write_to(o.out + "_trace.csv");

  auto write_field = [&](const lf::FieldState& s, const std::string& path) {
    lf::CsvWriter csv;
    meta_sim(csv);
    csv.meta("t", s.t);
    csv.header({"x", "y", "u"});
    for (int j = 0; j < s.grid.ny; ++j)
      for (int i = 0; i < s.grid.nx; ++i)
        csv.row({s.grid.x(i), s.grid.y(j), s.at(i, j)});
    csv.write_to(path);
  };
  write_field(sim.state(), o.out + "_field.csv");
  for (std::size_t n = 0; n < snaps.size(); ++n) {
    char suffix[32];
    std::snprintf(suffix, sizeof(suffix), "_field_%04zu.csv", n);
    write_field(snaps[n].second, o.out + suffix);
  }

  const double gap = std::abs(est.v_hat - v_analytic) /
                     std::max(1e-300, std::abs(v_analytic));
  std::cout << "v_hat = " << fmt(est.v_hat) << " +- " << fmt(est.std_err)
            << "\nv_analytic = " << fmt(v_analytic)
            << "\nrelative gap = " << fmt(gap) << "\nwrote " << o.out
            << "_trace.csv, " << o.out << "_field.csv";
  if (!snaps.empty()) std::cout << " and " << snaps.size() << " snapshots";
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_sweep(CommonOpts& o, double alpha_min, double alpha_max, int points) {
  apply_config(o);
  const lf::QuadraturePolicy pol = policy_of(o);
  if (!(0.0 < alpha_min && alpha_min < alpha_max && alpha_max < 0.5))
    throw lf::DomainError("sweep: need 0 < alpha-min < alpha-max < 1/2");
  if (points < 2) throw lf::DomainError("sweep: need at least 2 points");

  struct Row {
    double alpha, v, residual;
    bool ok;
  };
  std::vector<Row> rows(points);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < points; ++i) {
    const double alpha = alpha_min + (alpha_max - alpha_min) * i / (points - 1);
    Row r{alpha, 0.0, 0.0, true};
    try {
      r.v = lf::velocity_dimensionless(alpha);
      r.residual = lf::velocity_implicit_residual(alpha, r.v, pol);
    } catch (const lf::Error&) {
      r.ok = false;
      r.v = r.residual = std::numeric_limits<double>::quiet_NaN();
    }
    rows[i] = r;
  }

  long failures = 0;
  for (const auto& r : rows)
    if (!r.ok) ++failures;
  lf::CsvWriter vcsv;
  vcsv.meta("alpha_min", alpha_min);
  vcsv.meta("alpha_max", alpha_max);
  vcsv.meta("points", static_cast<double>(points));
  vcsv.meta("rel_tol", o.rel_tol);
  vcsv.meta("failures", static_cast<double>(failures));
  vcsv.header({"alpha", "v_closed_form", "v_implicit_residual"});
  for (const auto& r : rows) vcsv.row({r.alpha, r.v, r.residual});
  vcsv.write_to(o.out + "_velocity.csv");

  // homoclinic table over the advancing-front range alpha < 1/4
  struct HRow {
    double alpha, zeta;
    int n_roots;
    bool ok;
  };
  std::vector<HRow> hrows;
  for (int i = 0; i < points; ++i) {
    const double alpha = alpha_min + (alpha_max - alpha_min) * i / (points - 1);
    if (alpha < 0.25) hrows.push_back({alpha, 0.0, 0, true});
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t i = 0; i < hrows.size(); ++i) {
    try {
      const auto h = lf::homoclinic_find(hrows[i].alpha, pol);
      hrows[i].zeta = h.zeta;
      hrows[i].n_roots = static_cast<int>(h.all_roots.size());
    } catch (const lf::Error&) {
      hrows[i].ok = false;
      hrows[i].zeta = std::numeric_limits<double>::quiet_NaN();
    }
  }
  long hfail = 0;
  int multi = 0;
  for (const auto& r : hrows) {
    if (!r.ok) ++hfail;
    if (r.n_roots > 1) ++multi;
  }
  lf::CsvWriter hcsv;
  hcsv.meta("alpha_min", alpha_min);
  hcsv.meta("alpha_max", std::min(alpha_max, 0.25));
  hcsv.meta("rel_tol", o.rel_tol);
  hcsv.meta("failures", static_cast<double>(hfail));
  hcsv.meta("multi_root_points", static_cast<double>(multi));
  hcsv.header({"alpha", "zeta", "n_roots"});
  for (const auto& r : hrows)
    hcsv.row({r.alpha, r.zeta, static_cast<double>(r.n_roots)});
  hcsv.write_to(o.out + "_homoclinic.csv");

  std::cout << "wrote " << o.out << "_velocity.csv (" << points
            << " points, " << failures << " failures) and " << o.out
            << "_homoclinic.csv (" << hrows.size() << " points, " << hfail
            << " failures, " << multi << " multi-root)\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_selftest() {
  const auto results = lf::selftest::run_all(&std::cout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  std::cout << (results.size() - failures) << "/" << results.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 3;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const lf::NoSolutionError& e) {
    std::cerr << "error (no solution): " << e.what() << "\n";
    return 2;
  } catch (const lf::ZeroDegradationError& e) {
    std::cerr << "error (configuration): " << e.what() << "\n";
    return 2;
  } catch (const lf::DomainError& e) {
    std::cerr << "error (configuration): " << e.what() << "\n";
    return 2;
  } catch (const lf::Error& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"travelling fronts of reaction-diffusion systems with "
               "production on a line"};
  app.require_subcommand(1);

  CommonOpts vo, po, so, wo;
  std::string profile_grid_str = "-4:2:121,0:3:61";
  std::string sim_grid_str = "-12:18:301,0:8:81";
  std::string init_str = "exact";
  double t_end = 1.0, discard = 0.3, guard = -1.0;
  bool mirror = false;
  int samples = 200, snapshots = 0, sweep_points = 49;
  double alpha_min = 0.01, alpha_max = 0.49;

  auto* velocity = app.add_subcommand(
      "velocity", "closed-form front velocity and its integral cross-check");
  add_param_flags(velocity, vo);

  auto* profile = app.add_subcommand(
      "profile", "export the exact concentration profile u(x, y) as CSV");
  add_param_flags(profile, po);
  profile->add_option("--grid", profile_grid_str, "X0:X1:NX,Y0:Y1:NY");

  auto* simulate = app.add_subcommand(
      "simulate", "finite-difference run with front tracking");
  add_param_flags(simulate, so, /*with_alpha=*/false);
  simulate->add_option("--grid", sim_grid_str, "X0:X1:NX,0:YMAX:NY");
  simulate->add_option("--t-end", t_end, "simulated time span");
  simulate->add_option("--init", init_str, "initial condition: exact | step");
  simulate->add_flag("--mirror", mirror, "reflect the initial data in x");
  simulate->add_option("--samples", samples, "front-trace samples");
  simulate->add_option("--snapshots", snapshots,
                       "number of intermediate field snapshots");
  simulate->add_option("--discard", discard,
                       "transient fraction discarded by the speed fit");
  simulate->add_option("--guard", guard,
                       "guard-band width near the x edges "
                       "(default 10 sqrt(D/k))");

  auto* sweep = app.add_subcommand(
      "sweep", "velocity and homoclinic tables over a range of alpha");
  add_param_flags(sweep, wo, /*with_alpha=*/false);
  sweep->add_option("--alpha-min", alpha_min, "lower end of the sweep");
  sweep->add_option("--alpha-max", alpha_max, "upper end of the sweep");
  sweep->add_option("--points", sweep_points, "number of sweep points");

  app.add_subcommand("selftest", "run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (velocity->parsed()) return guarded([&] { return cmd_velocity(vo); });
  if (profile->parsed())
    return guarded([&] { return cmd_profile(po, profile_grid_str); });
  if (simulate->parsed())
    return guarded([&] {
      return cmd_simulate(so, sim_grid_str, t_end, init_str, mirror, samples,
                          snapshots, discard, guard);
    });
  if (sweep->parsed())
    return guarded(
        [&] { return cmd_sweep(wo, alpha_min, alpha_max, sweep_points); });
  return guarded([] { return cmd_selftest(); });
}
