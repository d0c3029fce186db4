#include <catch2/catch_amalgamated.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>

#include "npspec/grid.hpp"

using namespace npspec;
using Catch::Approx;

TEST_CASE("grid structure invariants") {
  const FrequencyGrid g = build_grid(50.0, 32, 1e-6);
  REQUIRE(g.size() % 2 == 0);
  const std::size_t n = g.size() / 2;
  for (std::size_t j = 0; j < g.size(); ++j) {
    REQUIRE(g.nodes[j] != 0.0);
    REQUIRE(g.weights[j] > 0.0);
    if (j > 0) REQUIRE(g.nodes[j] > g.nodes[j - 1]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    REQUIRE(g.nodes[j] == -g.nodes[g.size() - 1 - j]);
    REQUIRE(g.weights[j] == g.weights[g.size() - 1 - j]);
  }
  REQUIRE(g.innermost() > 0.0);
  REQUIRE(g.innermost() < 1e-6);

  CHECK_THROWS_AS(build_grid(1.0, 32, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, 2), std::invalid_argument);
}

TEST_CASE("grid integrates reference functions") {
  const FrequencyGrid g = build_grid(60.0, 32, 1e-6);

  const double expo = g.integrate([](double k) { return std::exp(-std::abs(k)); });
  CHECK(expo == Approx(2.0).epsilon(1e-9));

  const double odd = g.integrate([](double k) { return k * std::exp(-std::abs(k)); });
  CHECK(std::abs(odd) < 1e-14);

  // minus-kernel moment against an adaptive-quadrature oracle (q = 1)
  auto f = [](double k) {
    const double ak = std::abs(k);
    return (1.0 - std::exp(-ak)) / (2.0 * ak) * std::exp(-ak);
  };
  boost::math::quadrature::exp_sinh<double> es;
  const double oracle = 2.0 * es.integrate([&](double k) { return f(k); });
  CHECK(g.integrate(f) == Approx(oracle).epsilon(1e-8));
}

TEST_CASE("gauss panels handle gentle oscillation") {
  const FrequencyGrid g = build_grid(40.0, 32, 1e-6);
  // ∫ e^{-k^2/2} cos(ky) dk = √(2π) e^{-y^2/2}
  for (double y : {0.0, 3.0, 11.0, 25.0}) {
    const double got = g.integrate([&](double k) { return std::exp(-0.5 * k * k) * std::cos(k * y); });
    const double want = std::sqrt(2.0 * M_PI) * std::exp(-0.5 * y * y);
    REQUIRE(got == Approx(want).margin(1e-10));
  }
}

TEST_CASE("graded breakpoints cover requested interval") {
  auto bp = graded_breakpoints(1.0, 3.0, 1.4, 1e-4);
  REQUIRE(!bp.empty());
  for (double b : bp) {
    REQUIRE(b >= 1.0);
    REQUIRE(b <= 3.0);
  }
  GridOptions opt;
  opt.extra_breakpoints = bp;
  const FrequencyGrid g = build_grid(10.0, 32, 1e-6, opt);
  // narrow Lorentzian at 1.4 now resolved
  const double beta = 2e-4;
  const double got = g.integrate([&](double k) {
    const double d = std::abs(k) - 1.4;
    return beta / (d * d + beta * beta) / (2.0 * M_PI);
  });
  // two peaks (±1.4), each ≈ π·(1/2π)/... total = 2·(atan spans)/2π ≈ 1/2·(2/π)·... compare oracle
  boost::math::quadrature::exp_sinh<double> es;
  // analytic: ∫_0^∞ β/((k-1.4)^2+β^2) dk = atan(1.4/β) + π/2 ≈ π; doubled and /2π → ≈ 1
  const double want = 2.0 * (std::atan(1.4 / beta) + M_PI / 2.0) / (2.0 * M_PI);
  REQUIRE(got == Approx(want).epsilon(1e-5));
}
