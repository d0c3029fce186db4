#pragma once
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "npspec/geometry.hpp"

namespace npspec {

using Complex = std::complex<double>;

//! Density on the two boundary circles, sampled in the line coordinate y.
//! `outer` holds φ_R(y_j); `inner` holds φ_r(y_j) (crescent) or φ_{-r}(y_j).
//! Values are the raw density; the h-weighted samples h_c(y)φ_c(y) are what
//! transforms and boundary integrals consume.
struct BoundaryTrace {
  std::vector<double> y;  // uniform, symmetric about 0
  std::vector<Complex> outer;
  std::vector<Complex> inner;

  std::size_t size() const { return y.size(); }
  double dy() const { return y.size() > 1 ? y[1] - y[0] : 0.0; }

  const std::vector<Complex>& values(Component c) const {
    return c == Component::Outer ? outer : inner;
  }
  std::vector<Complex>& values(Component c) { return c == Component::Outer ? outer : inner; }
};

inline BoundaryTrace make_trace(double y_max, std::size_t n) {
  if (n < 2 || !(y_max > 0.0)) throw std::invalid_argument("make_trace: bad grid");
  BoundaryTrace t;
  t.y.resize(n);
  const double dy = 2.0 * y_max / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) t.y[j] = -y_max + dy * static_cast<double>(j);
  t.outer.assign(n, Complex{});
  t.inner.assign(n, Complex{});
  return t;
}

//! Trapezoid weight of node j on the uniform y-grid.
inline double trace_weight(const BoundaryTrace& t, std::size_t j) {
  const double dy = t.dy();
  return (j == 0 || j + 1 == t.size()) ? 0.5 * dy : dy;
}

//! ∫_{∂Ω} φ dσ = ∫ φ_R h_R dy + ∫ φ_r h_r dy.
inline Complex boundary_integral(const BoundaryTrace& t, const DomainSpec& dom) {
  Complex acc{};
  for (Component c : {Component::Outer, Component::Inner}) {
    const double xc = dom.line_abscissa(c);
    const auto& v = t.values(c);
    for (std::size_t j = 0; j < t.size(); ++j)
      acc += trace_weight(t, j) * line_scale(xc, t.y[j]) * v[j];
  }
  return acc;
}

//! Remove the discrete total charge by subtracting a Gaussian bump (in h·φ
//! units) from the outer component, so ∫φ_R h_R + ∫φ_r h_r = 0 exactly.
inline void project_mean_zero(BoundaryTrace& t, const DomainSpec& dom) {
  const Complex total = boundary_integral(t, dom);
  const double xR = dom.line_abscissa(Component::Outer);
  double bump_mass = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j)
    bump_mass += trace_weight(t, j) * std::exp(-0.5 * t.y[j] * t.y[j]);
  const Complex c = total / bump_mass;
  for (std::size_t j = 0; j < t.size(); ++j)
    t.outer[j] -= c * std::exp(-0.5 * t.y[j] * t.y[j]) / line_scale(xR, t.y[j]);
}

//! Weighted L², ∫ (|φ_R h_R|² + |φ_r h_r|²) dy; the norm u_forward preserves.
inline double trace_l2h(const BoundaryTrace& t, const DomainSpec& dom) {
  double acc = 0.0;
  for (Component c : {Component::Outer, Component::Inner}) {
    const double xc = dom.line_abscissa(c);
    const auto& v = t.values(c);
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double g = line_scale(xc, t.y[j]);
      acc += trace_weight(t, j) * g * g * std::norm(v[j]);
    }
  }
  return acc;
}

}  // namespace npspec
