#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "npspec/geometry.hpp"
#include "npspec/grid.hpp"

using namespace npspec;
using Catch::Approx;

TEST_CASE("inversion basics") {
  CHECK(mobius({1.0, 0.0}).x == Approx(1.0));
  CHECK(mobius({1.0, 0.0}).y == Approx(0.0));
  auto p = mobius({0.0, 2.0});
  CHECK(p.x == Approx(0.0).margin(0.0));
  CHECK(p.y == Approx(-0.5));
  const double a = 0.7;
  auto q = mobius({2.0 * a, 0.0});
  CHECK(q.x == Approx(1.0 / (2.0 * a)));
  CHECK_THROWS_AS(mobius({0.0, 0.0}), std::domain_error);
}

TEST_CASE("inversion is an involution") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000000; ++i) {
    PlanePoint p{u(rng), u(rng)};
    if (p.x == 0.0 && p.y == 0.0) continue;
    const PlanePoint q = mobius(mobius(p));
    const double scale = std::abs(p.x) + std::abs(p.y);
    REQUIRE(std::abs(q.x - p.x) <= 1e-14 * scale);
    REQUIRE(std::abs(q.y - p.y) <= 1e-14 * scale);
  }
}

TEST_CASE("circle maps onto vertical line") {
  // s is the angle from the cusp; stay a little off it, where 1/|p|²
  // amplifies representation error
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 2.0 * M_PI - 0.1);
  for (double a : {0.5, 1.0, 2.5, -0.8}) {
    for (int i = 0; i < 2000; ++i) {
      const double s = u(rng);
      PlanePoint p{a * (1.0 - std::cos(s)), -a * std::sin(s)};
      const PlanePoint w = mobius(p);
      REQUIRE(std::abs(w.x - 1.0 / (2.0 * a)) <= 1e-12 * std::abs(1.0 / (2.0 * a)) + 1e-13);
    }
  }
}

TEST_CASE("boundary_param lands on the circle") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (DomainKind kind : {DomainKind::Crescent, DomainKind::TouchingDisks}) {
    const DomainSpec dom{kind, 1.2, 0.4};
    for (Component c : {Component::Outer, Component::Inner}) {
      const Disk d = dom.disk(c);
      for (int i = 0; i < 2000; ++i) {
        const PlanePoint p = boundary_param(dom, c, u(rng));
        const double dist = std::hypot(p.x - d.signed_center, p.y);
        REQUIRE(dist == Approx(d.radius()).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("scale factor") {
  CHECK(scale_factor({1.0, 0.0}) == Approx(1.0));
  const double a = 1.3;
  CHECK(scale_factor({0.5 / a, 0.0}) == Approx(4.0 * a * a));
  CHECK_THROWS_AS(scale_factor({0.0, 0.0}), std::domain_error);
  // h_a decays monotonically in |y|
  double prev = line_scale(0.5, 0.0);
  for (double y = 0.5; y < 100.0; y *= 2.0) {
    const double h = line_scale(0.5, y);
    REQUIRE(h < prev);
    prev = h;
  }
  CHECK(line_scale(0.5, 1e9) == Approx(0.0).margin(1e-17));
}

TEST_CASE("domain parameters") {
  DomainSpec cres{DomainKind::Crescent, 1.0, 0.5};
  CHECK(cres.gap() == Approx(0.5));
  CHECK(cres.line_abscissa(Component::Outer) == Approx(0.5));
  CHECK(cres.line_abscissa(Component::Inner) == Approx(1.0));
  CHECK(cres.normal_sign(Component::Outer) == -1);
  CHECK(cres.normal_sign(Component::Inner) == +1);

  DomainSpec touch{DomainKind::TouchingDisks, 1.0, 0.5};
  CHECK(touch.gap() == Approx(1.5));
  CHECK(touch.line_abscissa(Component::Inner) == Approx(-1.0));
  CHECK(touch.normal_sign(Component::Inner) == +1);

  CHECK_THROWS_AS((DomainSpec{DomainKind::Crescent, 0.5, 1.0}.gap()), std::invalid_argument);
}

TEST_CASE("boundary parametrization") {
  DomainSpec cres{DomainKind::Crescent, 1.0, 0.5};
  auto p = boundary_param(cres, Component::Outer, 0.0);
  CHECK(p.x == Approx(2.0));
  CHECK(p.y == Approx(0.0).margin(0.0));

  // y → ±∞ approaches the cusp at the origin
  auto far = boundary_param(cres, Component::Outer, 1e8);
  CHECK(std::hypot(far.x, far.y) < 1e-7);

  DomainSpec touch{DomainKind::TouchingDisks, 1.0, 1.0};
  auto q = boundary_param(touch, Component::Inner, 0.0);
  CHECK(q.x == Approx(-2.0));
}

TEST_CASE("arclength element identity") {
  // ∫ h_a dy over [y1,y2] equals the arclength of the image arc on the circle.
  const double a = 0.75;
  const double xc = 0.5 / a;
  for (auto [y1, y2] : {std::pair{-1.0, 2.0}, {0.0, 5.0}, {-8.0, -0.25}}) {
    std::vector<double> gx, gw;
    detail::gauss_legendre(40, gx, gw);
    double quad = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double y = 0.5 * (y1 + y2) + 0.5 * (y2 - y1) * gx[i];
      quad += 0.5 * (y2 - y1) * gw[i] * line_scale(xc, y);
    }
    // image angle: θ(y) = -2 atan(y / xc), arc = a |θ2 - θ1|
    const double arc = a * std::abs(2.0 * std::atan(y2 / xc) - 2.0 * std::atan(y1 / xc));
    REQUIRE(quad == Approx(arc).epsilon(1e-8));
  }
}
