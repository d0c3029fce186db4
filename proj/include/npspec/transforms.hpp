#pragma once
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "npspec/geometry.hpp"
#include "npspec/grid.hpp"
#include "npspec/trace.hpp"

namespace npspec {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/√(2π)
inline constexpr double kSqrt2 = 1.4142135623730950488;

//! Component spectra (φ̂_R, φ̂_r): unitary Fourier transforms of the h-weighted
//! traces, sampled on the frequency grid.
struct ComponentSpectra {
  std::shared_ptr<const FrequencyGrid> grid;
  std::vector<Complex> outer;
  std::vector<Complex> inner;
};

//! Density in the diagonalizing coordinates (φ̂₁, φ̂₂) = P(φ̂_R, φ̂_r).
struct PUDensity {
  std::shared_ptr<const FrequencyGrid> grid;
  std::vector<Complex> ch1;
  std::vector<Complex> ch2;

  std::size_t size() const { return ch1.size(); }
  const std::vector<Complex>& channel(int c) const { return c == 1 ? ch1 : ch2; }
  std::vector<Complex>& channel(int c) { return c == 1 ? ch1 : ch2; }
};

inline void require_same_grid(const PUDensity& f, const PUDensity& g) {
  if (f.grid != g.grid && (f.grid == nullptr || g.grid == nullptr ||
                           f.grid->nodes != g.grid->nodes))
    throw std::invalid_argument("densities live on different frequency grids");
}

//! Uφ = [𝓕(h_R φ_R); 𝓕(h_r φ_r)], 𝓕g(k) = (1/√2π)∫ g(y) e^{-iky} dy,
//! by trapezoid sums on the trace grid. The phase advances by incremental
//! rotation, re-anchored every 256 steps.
inline ComponentSpectra u_forward(const BoundaryTrace& t, const DomainSpec& dom,
                                  std::shared_ptr<const FrequencyGrid> grid) {
  ComponentSpectra out;
  out.grid = grid;
  const std::size_t nk = grid->size(), ny = t.size();
  const double dy = t.dy();
  for (Component c : {Component::Outer, Component::Inner}) {
    const double xc = dom.line_abscissa(c);
    std::vector<Complex> g(ny);
    for (std::size_t j = 0; j < ny; ++j)
      g[j] = trace_weight(t, j) * line_scale(xc, t.y[j]) * t.values(c)[j];
    auto& dst = (c == Component::Outer) ? out.outer : out.inner;
    dst.assign(nk, Complex{});
    for (std::size_t i = 0; i < nk; ++i) {
      const double k = grid->nodes[i];
      const Complex step = std::polar(1.0, -k * dy);
      Complex rot = std::polar(1.0, -k * t.y[0]);
      Complex acc{};
      for (std::size_t j = 0; j < ny; ++j) {
        if ((j & 255u) == 0u) rot = std::polar(1.0, -k * t.y[j]);
        acc += g[j] * rot;
        rot *= step;
      }
      dst[i] = kInvSqrt2Pi * acc;
    }
  }
  return out;
}

//! P = (1/√2)[[-1,1],[1,1]]; its own inverse and transpose.
inline PUDensity apply_P(const ComponentSpectra& s) {
  PUDensity d;
  d.grid = s.grid;
  const std::size_t n = s.outer.size();
  d.ch1.resize(n);
  d.ch2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    d.ch1[j] = (-s.outer[j] + s.inner[j]) / kSqrt2;
    d.ch2[j] = (s.outer[j] + s.inner[j]) / kSqrt2;
  }
  return d;
}

inline ComponentSpectra apply_P_inverse(const PUDensity& d) {
  ComponentSpectra s;
  s.grid = d.grid;
  const std::size_t n = d.size();
  s.outer.resize(n);
  s.inner.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    s.outer[j] = (-d.ch1[j] + d.ch2[j]) / kSqrt2;
    s.inner[j] = (d.ch1[j] + d.ch2[j]) / kSqrt2;
  }
  return s;
}

//! U⁻¹: inverse Fourier synthesis on the grid, divided by the h factors.
inline BoundaryTrace u_inverse(const PUDensity& d, const DomainSpec& dom,
                               const std::vector<double>& y_nodes) {
  const ComponentSpectra s = apply_P_inverse(d);
  BoundaryTrace t;
  t.y = y_nodes;
  const std::size_t ny = y_nodes.size(), nk = d.size();
  const auto& grid = *d.grid;
  for (Component c : {Component::Outer, Component::Inner}) {
    const double xc = dom.line_abscissa(c);
    const auto& src = (c == Component::Outer) ? s.outer : s.inner;
    auto& dst = t.values(c);
    dst.assign(ny, Complex{});
    for (std::size_t j = 0; j < ny; ++j) {
      const double y = y_nodes[j];
      Complex acc{};
      for (std::size_t i = 0; i < nk; ++i)
        acc += grid.weights[i] * src[i] * std::polar(1.0, grid.nodes[i] * y);
      dst[j] = kInvSqrt2Pi * acc / line_scale(xc, y);
    }
  }
  return t;
}

//! PU in one go.
inline PUDensity pu_forward(const BoundaryTrace& t, const DomainSpec& dom,
                            std::shared_ptr<const FrequencyGrid> grid) {
  return apply_P(u_forward(t, dom, std::move(grid)));
}

}  // namespace npspec
