#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "linefront/front.hpp"
#include "linefront/selftest.hpp"

using namespace linefront;

namespace {
constexpr double kPi = std::numbers::pi;
const PhysicalParams kFig2{1.0, 1.0, 2.0 * kPi, 0.3};

// dense-scan + bisection oracle for the classical matching velocity,
// independent of the Brent-based solver path
double classical_velocity_scan_oracle(const PhysicalParams& p) {
  auto res = [&p](double v) { return classical_matching_residual(p, v); };
  double lo = -50.0, hi = -50.0;
  double prev = res(-50.0);
  for (double v = -50.0 + 1e-3; v <= 50.0; v += 1e-3) {
    const double r = res(v);
    if (prev * r <= 0.0) {
      lo = v - 1e-3;
      hi = v;
      break;
    }
    prev = r;
  }
  REQUIRE(lo < hi);
  for (int i = 0; i < 100; ++i) {
    const double m = 0.5 * (lo + hi);
    if (res(lo) * res(m) <= 0.0)
      hi = m;
    else
      lo = m;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("dimensionless velocity law") {
  CHECK(velocity_dimensionless(0.25) == 0.0);  // stationary, exactly
  CHECK(velocity_dimensionless(0.125) == Catch::Approx(2.0).epsilon(1e-14));
  CHECK(velocity_dimensionless(0.3 / (2.0 * kPi)) ==
        Catch::Approx(2.0 / std::tan(0.3)).epsilon(1e-13));
  // strictly decreasing, +inf at 0+, -inf at 1/2-
  CHECK(velocity_dimensionless(1e-6) > 1e5);
  CHECK(velocity_dimensionless(0.5 - 1e-6) < -1e5);
  double prev = velocity_dimensionless(0.01);
  for (double a = 0.02; a < 0.5; a += 0.01) {
    const double v = velocity_dimensionless(a);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("physical velocity law") {
  CHECK(velocity_physical(kFig2) ==
        Catch::Approx(2.0 / std::tan(0.3)).epsilon(1e-13));
  // alpha = 1/4 makes the front stationary
  CHECK(velocity_physical({1.0, 1.0, 1.0, 0.25}) == 0.0);
  CHECK_THROWS_AS(velocity_physical({1.0, 0.0, 1.0, 1.0}),
                  ZeroDegradationError);
  // alpha >= 1/2 rejected
  CHECK_THROWS_AS(velocity_physical({1.0, 1.0, 1.0, 0.6}), NoSolutionError);
}

TEST_CASE("zero-degradation velocity") {
  CHECK(velocity_zero_k({1.0, 0.0, kPi, 1.0}) == Catch::Approx(1.0));
  PhysicalParams p = kFig2;
  p.k = 0.0;
  CHECK(velocity_zero_k(p) == Catch::Approx(20.0 / 3.0).epsilon(1e-14));
  // independent of D
  PhysicalParams p2 = p;
  p2.D = 2.0 * p.D;
  CHECK(velocity_zero_k(p2) == velocity_zero_k(p));
  CHECK_THROWS_AS(velocity_zero_k(kFig2), DomainError);  // k != 0
}

TEST_CASE("zero-degradation limit of the physical velocity") {
  PhysicalParams p = kFig2;
  const double v0 = 20.0 / 3.0;
  double prev = -1e300;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    p.k = eps;
    const double v = velocity_physical(p);
    CHECK(v > prev);  // monotone approach from below
    CHECK(v < v0);
    prev = v;
  }
  CHECK(std::abs(prev - v0) / v0 <= 1e-2);
}

TEST_CASE("implicit velocity residual") {
  // (alpha=1/4, v=0): integral_0^inf K0 = pi/2 = 2 pi alpha, residual 0
  CHECK(velocity_implicit_residual(0.25, 0.0) ==
        Catch::Approx(0.0).margin(1e-9));
  // (alpha=1/8, v=2): closed form arccos(1/sqrt2)/1 = pi/4 = 2 pi / 8
  CHECK(velocity_implicit_residual(0.125, 2.0) ==
        Catch::Approx(0.0).margin(1e-8));
  // (alpha=1/8, v=0): pi/2 - pi/4 = pi/4
  CHECK(velocity_implicit_residual(0.125, 0.0) ==
        Catch::Approx(kPi / 4.0).epsilon(1e-9));
}

TEST_CASE("closed form vs defining integral across alpha") {
  for (double alpha : {0.02, 0.1, 0.25, 0.33, 0.47}) {
    const double v = velocity_dimensionless(alpha);
    CHECK(std::abs(velocity_implicit_residual(alpha, v)) <= 1e-8);
  }
}

TEST_CASE("front solution invariants") {
  for (double alpha : {0.01, 0.125, 0.25, 0.49}) {
    const auto sol = FrontSolution::from_alpha(alpha);
    CHECK(std::abs(sol.b * sol.b - sol.c * sol.c - 1.0) <= 1e-12);
    CHECK(sol.velocity == velocity_dimensionless(alpha));
  }
  CHECK_THROWS_AS(FrontSolution::from_alpha(0.6), NoSolutionError);
  // from_velocity inverts the velocity law
  for (double v : {-3.0, 0.0, 2.0, 6.5}) {
    const auto sol = FrontSolution::from_velocity(v);
    CHECK(velocity_dimensionless(sol.alpha) ==
          Catch::Approx(v).margin(1e-12));
  }
}

TEST_CASE("threshold identity u(0,0) = alpha") {
  for (double alpha : {0.05, 0.125, 0.25, 0.4}) {
    const auto sol = FrontSolution::from_alpha(alpha);
    CHECK(front_profile(sol, 0.0, 0.0) ==
          Catch::Approx(alpha).margin(1e-8));
  }
}

TEST_CASE("profile connects the stationary states") {
  for (double alpha : {0.125, 0.25}) {
    const auto sol = FrontSolution::from_alpha(alpha);
    for (double y : {0.0, 0.5, 1.0, 2.0}) {
      CHECK(std::abs(front_profile(sol, -40.0, y) - stationary_profile(y)) <=
            1e-6);
      CHECK(std::abs(front_profile(sol, 40.0, y)) <= 1e-6);
    }
  }
  // the specific value quoted for the tail state
  const auto sol = FrontSolution::from_alpha(0.25);
  CHECK(front_profile(sol, -40.0, 1.0) ==
        Catch::Approx(std::exp(-1.0) / 2.0).margin(1e-9));
}

TEST_CASE("profile monotonicity (reduced grid)") {
  const auto sol = FrontSolution::from_alpha(0.125);
  for (double y : {0.0, 0.5, 2.0}) {
    double prev = front_profile(sol, -15.0, y);
    for (int i = 1; i <= 40; ++i) {
      const double x = -15.0 + 30.0 * i / 40.0;
      const double u = front_profile(sol, x, y);
      CHECK(u < prev);
      prev = u;
    }
  }
  // decreasing in |y|
  for (double x : {-2.0, 0.0, 2.0}) {
    double prev = front_profile(sol, x, 0.0);
    for (double y : {0.25, 0.5, 1.0, 2.0, 5.0}) {
      const double u = front_profile(sol, x, y);
      CHECK(u < prev);
      prev = u;
    }
  }
}

TEST_CASE("profile y-symmetry") {
  const auto sol = FrontSolution::from_alpha(0.1);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dx(-5.0, 5.0), dy(0.01, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double x = dx(rng), y = dy(rng);
    const double up = front_profile(sol, x, y);
    const double dn = front_profile(sol, x, -y);
    CHECK(std::abs(up - dn) <= 1e-12 * std::max(1.0, std::abs(up)));
  }
}

TEST_CASE("stationary profile") {
  CHECK(stationary_profile(0.0) == 0.5);
  CHECK(stationary_profile(1.0) ==
        Catch::Approx(std::exp(-1.0) / 2.0).epsilon(1e-15));
  CHECK(stationary_profile(-1.0) == stationary_profile(1.0));
  // sup over y is 1/2 at y = 0
  CHECK(stationary_profile(0.1) < 0.5);
}

TEST_CASE("fundamental solution") {
  CHECK(fundamental_solution(1.0, 0.0, 0.0) ==
        Catch::Approx(0.421024438240708333 / (2.0 * kPi)).epsilon(1e-13));
  CHECK(fundamental_solution(0.6, 0.8, 0.0) ==
        fundamental_solution(0.6, -0.8, 0.0));
  CHECK_THROWS_AS(fundamental_solution(0.0, 0.0, 1.0), DomainError);
  // decay at infinity: scaled value approaches (1/2pi) sqrt(pi/2); the
  // leading asymptotic correction at x = 10 is -1/(8x) = -1.25%
  const double v = 0.0, b = 1.0, c = 0.0;
  const double scaled = fundamental_solution(10.0, 0.0, v) *
                        std::exp((b + c) * 10.0) * std::sqrt(10.0);
  CHECK(scaled ==
        Catch::Approx(std::sqrt(kPi / 2.0) / (2.0 * kPi)).epsilon(0.02));
}

TEST_CASE("physical profile agrees with the rescaled dimensionless one") {
  const auto d = to_dimensionless(kFig2);
  const auto sol = FrontSolution::from_alpha(d.alpha);
  auto rescaled = rescale_solution(
      [&sol](double x, double y) { return front_profile(sol, x, y); }, kFig2);
  for (double x : {-3.0, -1.0, 0.0, 0.5, 1.5}) {
    for (double y : {0.0, 0.4, 1.2}) {
      const double direct = front_profile_physical(kFig2, x, y);
      CHECK(direct == Catch::Approx(rescaled(x, y)).epsilon(1e-8));
    }
  }
}

TEST_CASE("physical profile threshold and tail state") {
  // production is active on x <= 0, so u(0,0) = u_c
  CHECK(front_profile_physical(kFig2, 0.0, 0.0) ==
        Catch::Approx(0.3).margin(1e-8));
  // behind the front u approaches a/(2 sqrt(kD)) = pi; at x = -40 the
  // slow approach rate b - c ~ 0.151 still leaves a ~1.6e-3 gap
  CHECK(front_profile_physical(kFig2, -40.0, 0.0) ==
        Catch::Approx(kPi).margin(5e-3));
  CHECK(front_profile_physical(kFig2, 2.0, 1.0) ==
        front_profile_physical(kFig2, 2.0, -1.0));
}

TEST_CASE("zero-degradation profile") {
  PhysicalParams p = kFig2;
  p.k = 0.0;
  // threshold condition carries over: u(0,0) = u_c
  CHECK(front_profile_zero_k(p, 0.0, 0.0) ==
        Catch::Approx(p.u_c).margin(1e-8));
  // grows without bound behind the front
  const double far = front_profile_zero_k(p, -20.0, 0.0);
  const double mid = front_profile_zero_k(p, -10.0, 0.0);
  CHECK(far > mid);
  CHECK(mid > front_profile_zero_k(p, 0.0, 0.0));
  // y symmetry
  CHECK(front_profile_zero_k(p, -1.0, 0.7) ==
        front_profile_zero_k(p, -1.0, -0.7));
  // the defining integral diverges for v <= 0 (degenerate kernel b = |c|)
  CHECK_THROWS_AS(
      detail::kernel_line_integral(0.5, -0.5, 0.0,
                                   std::numeric_limits<double>::infinity(),
                                   0.0, QuadraturePolicy{}),
      TailDivergenceError);
}

TEST_CASE("homoclinic solution") {
  // alpha -> 0+: residual at tiny zeta is negative, roots are small
  CHECK(homoclinic_threshold_residual(1e-6, 0.05) < 0.0);
  const auto h1 = homoclinic_find(0.05);
  CHECK(h1.zeta < 0.1);

  // consistency: threshold residual vanishes at the root
  for (double alpha : {0.05, 0.1, 0.2}) {
    const auto h = homoclinic_find(alpha);
    CHECK(std::abs(homoclinic_threshold_residual(h.zeta, alpha)) <= 1e-8);
    CHECK(h.interior_value > alpha);
    CHECK(h.all_roots.size() == 1);  // the residual is monotone in zeta
  }

  // golden value frozen from the dense-scan oracle
  const double zeta_oracle = selftest::homoclinic_zeta_scan_oracle(0.1);
  CHECK(zeta_oracle == Catch::Approx(0.124695375186515938).margin(1e-9));
  CHECK(homoclinic_find(0.1).zeta ==
        Catch::Approx(zeta_oracle).margin(1e-6));

  // domain guards
  CHECK_THROWS_AS(homoclinic_find(0.3), DomainError);
  CHECK_THROWS_AS(homoclinic_find(0.6), NoSolutionError);
}

TEST_CASE("homoclinic profile shape") {
  const auto h = homoclinic_find(0.1);
  // even in x, above threshold strictly inside the production interval
  CHECK(homoclinic_profile(h.zeta, 0.3, 0.0) ==
        Catch::Approx(homoclinic_profile(h.zeta, -0.3, 0.0)).epsilon(1e-10));
  CHECK(homoclinic_profile(h.zeta, 0.5 * h.zeta, 0.0) > h.alpha);
  CHECK(homoclinic_profile(h.zeta, 2.0 * h.zeta, 0.0) < h.alpha);
}

TEST_CASE("classical comparison front") {
  // k = 0: v = sqrt(a D / u_c)
  const auto cf0 = classical_velocity({1.0, 0.0, 1.0, 1.0});
  CHECK(cf0.velocity == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(cf0.lambda_plus == 0.0);
  CHECK(cf0.lambda_minus < 0.0);

  // symmetric bistable point u_c = a/(2k): stationary, residual exactly 0
  const PhysicalParams sym{1.3, 1.0, 2.0, 1.0};
  CHECK(classical_matching_residual(sym, 0.0) == 0.0);
  CHECK(classical_velocity(sym).velocity == Catch::Approx(0.0).margin(1e-12));

  // generic case against the dense-scan oracle
  const PhysicalParams gen{1.0, 1.0, 1.0, 0.3};
  const auto cf = classical_velocity(gen);
  CHECK(cf.velocity ==
        Catch::Approx(classical_velocity_scan_oracle(gen)).margin(1e-8));
  CHECK(cf.velocity == Catch::Approx(0.872871560943969525).margin(1e-9));
  // lambda are the two real roots of D l^2 + v l - k = 0
  CHECK(gen.D * cf.lambda_plus * cf.lambda_plus +
            cf.velocity * cf.lambda_plus - gen.k ==
        Catch::Approx(0.0).margin(1e-12));
  CHECK(cf.lambda_plus > 0.0);
  CHECK(cf.lambda_minus < 0.0);

  // k -> 0 continuation approaches the exact zero-degradation value
  const PhysicalParams near0{1.0, 1e-6, 1.0, 1.0};
  CHECK(std::abs(classical_velocity(near0).velocity - 1.0) <= 1e-2);

  // bistable regime required
  CHECK_THROWS_AS(classical_velocity({1.0, 1.0, 1.0, 2.0}), DomainError);
}

TEST_CASE("leading edge decay fit") {
  for (double v : {0.0, 2.0}) {
    const auto sol = FrontSolution::from_velocity(v);
    const double gamma_expected = sol.b + sol.c;
    const auto fit =
        leading_edge_decay(sol, default_leading_edge_samples(gamma_expected));
    CAPTURE(v);
    CHECK(std::abs(fit.gamma - gamma_expected) / gamma_expected <= 0.02);
    CHECK(fit.power >= 0.3);
    CHECK(fit.power <= 0.7);
    CHECK(fit.n_used >= 8);
  }
  const auto sol = FrontSolution::from_velocity(2.0);
  CHECK_THROWS_AS(
      leading_edge_decay(sol, std::vector<double>{1.0, 2.0}),
      InsufficientDataError);
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  const auto sol = FrontSolution::from_alpha(0.125);
  std::vector<double> xs, ys{0.0, 0.5, 1.5};
  for (int i = 0; i <= 40; ++i) xs.push_back(-4.0 + 0.2 * i);
  const auto grid = profile_grid(sol, xs, ys);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); i += 7) {
      CHECK(grid[j * xs.size() + i] ==
            Catch::Approx(front_profile(sol, xs[i], ys[j])).epsilon(1e-9));
    }
  }
  // physical variant
  std::vector<double> pxs{-2.0, -1.0, 0.0, 1.0};
  const auto pgrid = profile_grid_physical(kFig2, pxs, ys);
  CHECK(pgrid[2] ==
        Catch::Approx(front_profile_physical(kFig2, 0.0, 0.0)).epsilon(1e-8));
}
