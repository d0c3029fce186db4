#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <random>

#include "helpers.hpp"
#include "npspec/operators.hpp"
#include "npspec/transforms.hpp"

using namespace npspec;
using testing::GaussBump;
using Catch::Approx;

namespace {

const DomainSpec kCres{DomainKind::Crescent, 1.0, 0.5};

BoundaryTrace bump_trace(const DomainSpec& dom, const GaussBump& outer, const GaussBump& inner,
                         double y_max = 30.0, std::size_t n = 4097) {
  return testing::BumpTracker{{outer}, {inner}}.sample(dom, y_max, n);
}

}  // namespace

TEST_CASE("u_forward reproduces the Gaussian self-transform") {
  auto grid = std::make_shared<FrequencyGrid>(build_grid(24.0, 32, 1e-6));
  GaussBump gb{1.0, 0.0, 1.0};
  BoundaryTrace t = bump_trace(kCres, gb, GaussBump{0.0, 0.0, 1.0});
  const ComponentSpectra s = u_forward(t, kCres, grid);
  for (std::size_t j = 0; j < grid->size(); ++j) {
    const double k = grid->nodes[j];
    REQUIRE(std::abs(s.outer[j] - std::exp(-0.5 * k * k)) < 1e-8);
    REQUIRE(std::abs(s.inner[j]) < 1e-14);
  }
}

TEST_CASE("u_forward zero trace") {
  auto grid = std::make_shared<FrequencyGrid>(build_grid(8.0, 32, 1e-6));
  BoundaryTrace t = make_trace(10.0, 257);
  const ComponentSpectra s = u_forward(t, kCres, grid);
  for (auto v : s.outer) REQUIRE(v == Complex{});
  for (auto v : s.inner) REQUIRE(v == Complex{});
}

TEST_CASE("u_forward matches direct oscillatory quadrature at random k") {
  auto grid = std::make_shared<FrequencyGrid>(build_grid(16.0, 32, 1e-6));
  GaussBump a{0.8, -1.3, 0.9}, b{-0.4, 2.1, 1.4};
  BoundaryTrace t = bump_trace(kCres, a, b);
  const ComponentSpectra s = u_forward(t, kCres, grid);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, grid->size() - 1);
  for (int i = 0; i < 20; ++i) {
    const std::size_t j = pick(rng);
    const double k = grid->nodes[j];
    REQUIRE(std::abs(s.outer[j] - a.ghat(k)) < 1e-8);
    REQUIRE(std::abs(s.inner[j] - b.ghat(k)) < 1e-8);
  }
}

TEST_CASE("P is a self-inverse orthogonal mixing") {
  auto grid = std::make_shared<FrequencyGrid>(build_grid(4.0, 32, 1e-4));
  const std::size_t n = grid->size();
  ComponentSpectra s;
  s.grid = grid;
  s.outer.assign(n, Complex{1.0, 0.0});
  s.inner.assign(n, Complex{1.0, 0.0});
  PUDensity d = apply_P(s);
  CHECK(std::abs(d.ch1[0]) < 1e-15);
  CHECK(d.ch2[0].real() == Approx(std::sqrt(2.0)));

  s.inner.assign(n, Complex{-1.0, 0.0});
  d = apply_P(s);
  CHECK(d.ch1[0].real() == Approx(-std::sqrt(2.0)));
  CHECK(std::abs(d.ch2[0]) < 1e-15);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    s.outer[j] = Complex{u(rng), u(rng)};
    s.inner[j] = Complex{u(rng), u(rng)};
  }
  const ComponentSpectra rt = apply_P_inverse(apply_P(s));
  for (std::size_t j = 0; j < n; ++j) {
    REQUIRE(std::abs(rt.outer[j] - s.outer[j]) < 1e-15);
    REQUIRE(std::abs(rt.inner[j] - s.inner[j]) < 1e-15);
  }
}

TEST_CASE("u_inverse: Gaussian channel synthesizes the Gaussian trace") {
  auto grid = std::make_shared<FrequencyGrid>(build_grid(24.0, 32, 1e-6));
  const std::size_t n = grid->size();
  ComponentSpectra s;
  s.grid = grid;
  s.outer.resize(n);
  s.inner.assign(n, Complex{});
  for (std::size_t j = 0; j < n; ++j)
    s.outer[j] = std::exp(-0.5 * grid->nodes[j] * grid->nodes[j]);
  PUDensity d = apply_P(s);

  std::vector<double> ys{-8.0, -2.5, 0.0, 0.7, 3.0, 9.0};
  const BoundaryTrace t = u_inverse(d, kCres, ys);
  const double xR = kCres.line_abscissa(Component::Outer);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const double want = std::exp(-0.5 * ys[j] * ys[j]) / line_scale(xR, ys[j]);
    REQUIRE(std::abs(t.outer[j] - want) < 1e-6);
    REQUIRE(std::abs(t.inner[j]) < 1e-10);
  }
}

TEST_CASE("round trip u_inverse ∘ P⁻¹ ∘ P ∘ u_forward is the identity") {
  for (DomainKind kind : {DomainKind::Crescent, DomainKind::TouchingDisks}) {
    const DomainSpec dom{kind, 1.0, 0.5};
    auto grid = std::make_shared<FrequencyGrid>(build_grid(20.0, 32, 1e-6));
    std::mt19937_64 rng(kind == DomainKind::Crescent ? 5 : 6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 3; ++rep) {
      GaussBump a{u(rng), 2.0 * u(rng), 0.8 + 0.4 * std::abs(u(rng))};
      GaussBump b{u(rng), 2.0 * u(rng), 0.8 + 0.4 * std::abs(u(rng))};
      BoundaryTrace t = bump_trace(dom, a, b);
      project_mean_zero(t, dom);
      const PUDensity d = pu_forward(t, dom, grid);
      const BoundaryTrace back = u_inverse(d, dom, t.y);
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < t.size(); ++j) {
        num += std::norm(back.outer[j] - t.outer[j]) * std::norm(line_scale(dom.line_abscissa(Component::Outer), t.y[j]));
        num += std::norm(back.inner[j] - t.inner[j]) * std::norm(line_scale(dom.line_abscissa(Component::Inner), t.y[j]));
        den += std::norm(t.outer[j]) * std::norm(line_scale(dom.line_abscissa(Component::Outer), t.y[j]));
        den += std::norm(t.inner[j]) * std::norm(line_scale(dom.line_abscissa(Component::Inner), t.y[j]));
      }
      REQUIRE(std::sqrt(num / den) < 1e-6);
    }
  }
}

TEST_CASE("Parseval consistency for the h-weighted transform") {
  auto grid = std::make_shared<FrequencyGrid>(build_grid(24.0, 32, 1e-6));
  GaussBump a{0.9, 0.4, 1.1}, b{-0.6, -1.0, 0.7};
  BoundaryTrace t = bump_trace(kCres, a, b);
  const ComponentSpectra s = u_forward(t, kCres, grid);
  double kspace = 0.0;
  for (std::size_t j = 0; j < grid->size(); ++j)
    kspace += grid->weights[j] * (std::norm(s.outer[j]) + std::norm(s.inner[j]));
  REQUIRE(kspace == Approx(trace_l2h(t, kCres)).epsilon(1e-6));
}

TEST_CASE("real traces produce Hermitian channels exactly") {
  auto grid = std::make_shared<FrequencyGrid>(build_grid(12.0, 32, 1e-5));
  GaussBump a{1.1, 0.8, 1.0}, b{0.3, -0.9, 1.2};
  BoundaryTrace t = bump_trace(kCres, a, b);
  const ComponentSpectra s = u_forward(t, kCres, grid);
  const std::size_t n = grid->size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    REQUIRE(s.outer[j] == std::conj(s.outer[n - 1 - j]));
    REQUIRE(s.inner[j] == std::conj(s.inner[n - 1 - j]));
  }
}

TEST_CASE("mean-zero traces encode as O(|k|) plus channel") {
  auto grid = std::make_shared<FrequencyGrid>(build_grid(12.0, 32, 1e-6));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    GaussBump a{u(rng) + 1.5, u(rng), 1.0}, b{u(rng), u(rng), 1.3};
    BoundaryTrace t = bump_trace(kCres, a, b);
    project_mean_zero(t, kCres);
    const PUDensity d = pu_forward(t, kCres, grid);
    // slope estimated at the two innermost positive nodes stays bounded
    const double defect = mean_zero_defect(d);
    double ch2max = 0.0;
    for (auto v : d.ch2) ch2max = std::max(ch2max, std::abs(v));
    REQUIRE(defect <= 20.0 * ch2max);
  }
}
