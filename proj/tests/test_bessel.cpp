#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "linefront/bessel.hpp"
#include "oracles.hpp"

using linefront::bessel_k0;
using linefront::bessel_k0_scaled;

TEST_CASE("K0 reference values") {
  // frozen from the quad-precision series oracle (k0_reference)
  CHECK(bessel_k0(1.0) == Catch::Approx(0.421024438240708333).epsilon(1e-13));
  CHECK(bessel_k0(1e-6) ==
        Catch::Approx(13.9314420736264194).epsilon(1e-13));
  // leading behaviour at small x: -ln(x/2) - gamma
  const double lead = -std::log(0.5e-6) - 0.57721566490153286;
  CHECK(bessel_k0(1e-6) == Catch::Approx(lead).epsilon(1e-10));
  CHECK(bessel_k0(0.5) == Catch::Approx(0.924419071227665862).epsilon(1e-13));
  CHECK(bessel_k0(2.0) == Catch::Approx(0.113893872749533436).epsilon(1e-13));
  CHECK(bessel_k0(5.0) ==
        Catch::Approx(0.00369109833404259427).epsilon(1e-13));
  CHECK(bessel_k0(100.0) ==
        Catch::Approx(4.65662822917590202e-45).epsilon(1e-13));
  CHECK(bessel_k0(700.0) ==
        Catch::Approx(4.66977643168537688e-306).epsilon(1e-12));
}

TEST_CASE("K0 large-x asymptotics approach sqrt(pi/2)") {
  const double target = std::sqrt(std::numbers::pi / 2.0);  // 1.2533141...
  for (double x : {300.0, 500.0, 700.0}) {
    const double scaled = bessel_k0_scaled(x) * std::sqrt(x);
    // first asymptotic correction is -1/(8x)
    CHECK(scaled == Catch::Approx(target).margin(2.0 / (8.0 * x)));
    CHECK(scaled < target);
  }
  // and the limit value itself agrees with the oracle route
  CHECK(oracles::k0_reference(700.0) * std::sqrt(700.0) * std::exp(700.0) ==
        Catch::Approx(bessel_k0_scaled(700.0) * std::sqrt(700.0))
            .epsilon(1e-12));
}

TEST_CASE("K0 underflows to zero for very large x") {
  CHECK(bessel_k0(800.0) == 0.0);
  CHECK(bessel_k0_scaled(800.0) > 0.0);  // the scaled form does not
}

TEST_CASE("K0 domain errors") {
  CHECK_THROWS_AS(bessel_k0(0.0), linefront::DomainError);
  CHECK_THROWS_AS(bessel_k0(-1.0), linefront::DomainError);
  CHECK_THROWS_AS(bessel_k0(std::nan("")), linefront::DomainError);
  CHECK_THROWS_AS(bessel_k0_scaled(-2.0), linefront::DomainError);
}

TEST_CASE("K0 oracle agreement on a log grid") {
  // max relative error vs the extended-precision series/asymptotic oracle
  // over 200 log-spaced points in [1e-6, 100]
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = 1e-6 * std::pow(1e8, i / 199.0);
    const double ref = oracles::k0_reference(x);
    worst = std::max(worst, std::abs(bessel_k0(x) / ref - 1.0));
  }
  CHECK(worst <= 1e-10);
  // the tighter contract over the full working range
  for (double x : {1e-8, 1e-4, 0.1, 1.9999, 2.0001, 7.9, 8.1, 50.0, 400.0,
                   700.0}) {
    CHECK(bessel_k0(x) ==
          Catch::Approx(oracles::k0_reference(x)).epsilon(1e-12));
  }
}

TEST_CASE("K0 is strictly decreasing") {
  double prev = bessel_k0(1e-6);
  for (int i = 1; i <= 400; ++i) {
    const double x = 1e-6 * std::pow(5e7, i / 400.0);  // up to 50
    const double v = bessel_k0(x);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("scaled and unscaled variants are consistent") {
  for (double x : {0.3, 1.0, 2.0, 3.7, 12.0, 80.0}) {
    CHECK(bessel_k0_scaled(x) * std::exp(-x) ==
          Catch::Approx(bessel_k0(x)).epsilon(1e-14));
  }
}
