#pragma once
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "npspec/operators.hpp"
#include "npspec/trace.hpp"
#include "npspec/transforms.hpp"

namespace testing {

using namespace npspec;

//! Trace whose h-weighted samples are Gaussian bumps; all transforms known.
struct GaussBump {
  double amp{}, mu{}, sigma{1.0};
  double g(double y) const {
    return amp * std::exp(-0.5 * (y - mu) * (y - mu) / (sigma * sigma));
  }
  Complex ghat(double k) const {
    return amp * sigma * std::exp(-0.5 * k * k * sigma * sigma) * std::polar(1.0, -k * mu);
  }
};

//! Sum of bumps per component, in density units.
struct BumpTracker {
  std::vector<GaussBump> outer, inner;

  BoundaryTrace sample(const DomainSpec& dom, double y_max = 30.0,
                       std::size_t n = 4097) const {
    BoundaryTrace t = make_trace(y_max, n);
    for (std::size_t j = 0; j < t.size(); ++j) {
      double go = 0.0, gi = 0.0;
      for (const auto& b : outer) go += b.g(t.y[j]);
      for (const auto& b : inner) gi += b.g(t.y[j]);
      t.outer[j] = go / line_scale(dom.line_abscissa(Component::Outer), t.y[j]);
      t.inner[j] = gi / line_scale(dom.line_abscissa(Component::Inner), t.y[j]);
    }
    return t;
  }
};

//! Random smooth mean-zero trace; bump parameters keep |y| support inside ~12.
inline BumpTracker random_bumps(std::mt19937_64& rng, int per_component = 3) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0), mu(-2.5, 2.5), sg(0.7, 1.6);
  BumpTracker bt;
  double mass = 0.0;
  for (int i = 0; i < per_component; ++i) {
    GaussBump a{amp(rng), mu(rng), sg(rng)}, b{amp(rng), mu(rng), sg(rng)};
    bt.outer.push_back(a);
    bt.inner.push_back(b);
    mass += (a.amp * a.sigma + b.amp * b.sigma);
  }
  // cancel the total charge analytically: ∫ g = amp·σ·√(2π)
  bt.outer.push_back(GaussBump{-mass, 0.0, 1.0});
  return bt;
}

inline BoundaryTrace random_mean_zero_trace(std::mt19937_64& rng, const DomainSpec& dom,
                                            double y_max = 30.0, std::size_t n = 4097) {
  BoundaryTrace t = random_bumps(rng).sample(dom, y_max, n);
  project_mean_zero(t, dom);  // remove the residual discrete charge
  return t;
}

//! Random Hermitian-symmetric PUDensity with mean-zero-class plus channel.
inline PUDensity random_density(std::mt19937_64& rng,
                                std::shared_ptr<const FrequencyGrid> grid) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0), mu(0.0, 3.0), sg(0.5, 1.5);
  PUDensity d;
  d.grid = grid;
  const std::size_t n = grid->size();
  d.ch1.assign(n, Complex{});
  d.ch2.assign(n, Complex{});
  for (int c = 1; c <= 2; ++c) {
    for (int b = 0; b < 3; ++b) {
      const Complex coef{amp(rng), amp(rng)};
      const double m = mu(rng), s = sg(rng);
      for (std::size_t j = 0; j < n; ++j) {
        const double k = grid->nodes[j];
        const Complex v = coef * std::exp(-0.5 * (k - m) * (k - m) / (s * s)) +
                          std::conj(coef) * std::exp(-0.5 * (k + m) * (k + m) / (s * s));
        d.channel(c)[j] += v;
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double k = grid->nodes[j];
    d.ch2[j] *= -std::expm1(-k * k);  // O(k²) vanishing at 0 keeps the class
  }
  return d;
}

//! Relative error between traces in the h-weighted L² metric.
inline double trace_rel_error(const BoundaryTrace& got, const BoundaryTrace& want,
                              const DomainSpec& dom) {
  double num = 0.0, den = 0.0;
  for (Component c : {Component::Outer, Component::Inner}) {
    const double xc = dom.line_abscissa(c);
    for (std::size_t j = 0; j < want.size(); ++j) {
      const double h = line_scale(xc, want.y[j]);
      num += trace_weight(want, j) * std::norm(h * (got.values(c)[j] - want.values(c)[j]));
      den += trace_weight(want, j) * std::norm(h * want.values(c)[j]);
    }
  }
  return std::sqrt(num / den);
}

}  // namespace testing
