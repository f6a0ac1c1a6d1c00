#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "linefront/front.hpp"
#include "linefront/model.hpp"

using namespace linefront;

static const PhysicalParams kFig2{1.0, 1.0, 2.0 * std::numbers::pi, 0.3};

TEST_CASE("to_dimensionless examples") {
  CHECK(to_dimensionless(kFig2).alpha ==
        Catch::Approx(0.3 / (2.0 * std::numbers::pi)).epsilon(1e-15));
  CHECK(to_dimensionless({1.0, 1.0, 1.0, 0.25}).alpha ==
        Catch::Approx(0.25).epsilon(1e-15));
  CHECK(to_dimensionless({4.0, 1.0, 2.0, 0.1}).alpha ==
        Catch::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("to_dimensionless rejects k = 0") {
  CHECK_THROWS_AS(to_dimensionless({1.0, 0.0, 1.0, 1.0}),
                  ZeroDegradationError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(to_dimensionless({-1.0, 1.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(to_dimensionless({1.0, -1.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(to_dimensionless({1.0, 1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(to_dimensionless({1.0, 1.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("half-plane boundary condition carries the delta split") {
  const HalfPlaneBC bc = half_plane_bc(kFig2);
  CHECK(bc.flux_coefficient == Catch::Approx(0.5 * kFig2.a));
  CHECK(bc.threshold == kFig2.u_c);
  CHECK(bc.production == kFig2.a);
}

TEST_CASE("existence domain classification") {
  CHECK(existence_domain(0.1) == FrontRegime::FastForward);
  CHECK(existence_domain(0.25) == FrontRegime::Stationary);
  CHECK(existence_domain(0.3) == FrontRegime::Backward);
  CHECK(existence_domain(0.5) == FrontRegime::NoSolution);
  CHECK(existence_domain(0.6) == FrontRegime::NoSolution);
  CHECK(existence_domain(0.0477465) == FrontRegime::FastForward);
  CHECK_THROWS_AS(existence_domain(0.0), DomainError);
  CHECK_THROWS_AS(existence_domain(-0.1), DomainError);
}

TEST_CASE("classification is consistent with the velocity sign") {
  for (double alpha = 0.01; alpha < 0.5; alpha += 0.007) {
    const double v = velocity_dimensionless(alpha);
    switch (existence_domain(alpha)) {
      case FrontRegime::FastForward: CHECK(v > 0.0); break;
      case FrontRegime::Stationary: CHECK(v == 0.0); break;
      case FrontRegime::Backward: CHECK(v < 0.0); break;
      default: FAIL("unexpected NoSolution inside (0, 1/2)");
    }
  }
}

TEST_CASE("rescaling examples") {
  CHECK(rescale_velocity(0.0, kFig2) == 0.0);
  // Fig. 2: alpha = 0.3/(2 pi), v_phys = 2 cot(0.3) ~ 6.4655 (~6.47)
  const double alpha = to_dimensionless(kFig2).alpha;
  CHECK(rescale_velocity(velocity_dimensionless(alpha), kFig2) ==
        Catch::Approx(2.0 / std::tan(0.3)).epsilon(1e-13));
  // stationary tail state maps to a/(2 sqrt(kD)) at y = 0
  auto phys = rescale_solution(
      [](double x, double y) { return stationary_profile(y); }, kFig2);
  CHECK(phys(12.3, 0.0) ==
        Catch::Approx(kFig2.a / (2.0 * std::sqrt(kFig2.k * kFig2.D)))
            .epsilon(1e-14));
}

TEST_CASE("round trip rescale o to_dimensionless is the identity") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const PhysicalParams p{std::pow(10.0, logu(rng)),
                           std::pow(10.0, logu(rng)),
                           std::pow(10.0, logu(rng)),
                           std::pow(10.0, logu(rng))};
    const Rescaling s = Rescaling::from(p);
    // velocity map round trip
    const double v_dim = 1.7;
    CHECK(rescale_velocity(v_dim, p) / s.velocity ==
          Catch::Approx(v_dim).epsilon(1e-12));
    // profile sample round trip: physical wrapper evaluated at mapped
    // coordinates returns the scaled dimensionless sample
    auto u_dim = [](double x, double y) {
      return std::exp(-std::abs(y)) / (2.0 + x * x);
    };
    auto u_phys = rescale_solution(u_dim, p);
    for (double x : {-3.0, 0.0, 1.5}) {
      for (double y : {0.0, 0.7}) {
        const double xp = x * s.length, yp = y * s.length;
        CHECK(u_phys(xp, yp) / s.concentration ==
              Catch::Approx(u_dim(x, y)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("alpha periodicity guard: out-of-branch alpha never returns a "
          "velocity") {
  // cot is 1/2-periodic, so alpha = 0.6 would give a finite number if the
  // branch restriction were missing
  CHECK_THROWS_AS(velocity_dimensionless(0.6), NoSolutionError);
  CHECK_THROWS_AS(velocity_dimensionless(0.51), NoSolutionError);
  CHECK_THROWS_AS(velocity_dimensionless(1.1), NoSolutionError);
  CHECK_THROWS_AS(velocity_dimensionless(0.5), NoSolutionError);
}
