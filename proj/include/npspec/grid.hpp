#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

namespace npspec {

namespace detail {

//! Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
}

}  // namespace detail

//! Symmetric quadrature grid on [-k_max, k_max] \ {0}: Gauss-Legendre panels,
//! log-spaced panel edges below |k| = 1 (down to a [0, k_min] cap panel) and
//! uniform edges above. No node sits at k = 0; the -k half mirrors the +k half
//! with equal weights.
struct FrequencyGrid {
  std::vector<double> nodes;    // sorted ascending, symmetric about 0
  std::vector<double> weights;  // positive, matching nodes
  double k_min{};               // requested inner panel edge
  double k_max{};               // truncation

  std::size_t size() const { return nodes.size(); }

  //! Smallest positive node magnitude.
  double innermost() const {
    double best = k_max;
    for (double k : nodes)
      if (k > 0.0 && k < best) best = k;
    return best;
  }

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0) * 0.0);
    R acc{};
    for (std::size_t j = 0; j < nodes.size(); ++j) acc += weights[j] * f(nodes[j]);
    return acc;
  }
};

struct GridOptions {
  int panel_order = 16;          // Gauss nodes per panel
  double tail_panel_width = 0.0; // 0 → automatic
  std::vector<double> extra_breakpoints;  // additional panel edges in (0, k_max)
};

//! Build the composite grid. n_per_decade controls node density of the
//! logarithmic section; the uniform tail resolves both the symbol decay scale
//! and moderate e^{iky} oscillation (|y| up to ~60 at panel width 0.625).
inline FrequencyGrid build_grid(double k_max, int n_per_decade = 32, double k_min = 1e-6,
                                GridOptions opt = {}) {
  if (!(k_min > 0.0) || !(k_max > k_min))
    throw std::invalid_argument("build_grid: need 0 < k_min < k_max");
  if (n_per_decade < 4) throw std::invalid_argument("build_grid: n_per_decade < 4");

  const int order = std::max(4, std::min(opt.panel_order, n_per_decade));
  const int panels_per_decade = std::max(1, (n_per_decade + order - 1) / order);
  double tail_w = opt.tail_panel_width;
  if (tail_w <= 0.0) tail_w = 0.625;

  std::vector<double> edges;
  edges.push_back(0.0);
  const double log_top = std::min(1.0, k_max);
  if (k_min < log_top) {
    edges.push_back(k_min);
    const double decades = std::log10(log_top / k_min);
    const int np = std::max(1, static_cast<int>(std::ceil(decades * panels_per_decade)));
    for (int i = 1; i <= np; ++i)
      edges.push_back(k_min * std::pow(log_top / k_min, static_cast<double>(i) / np));
  } else {
    edges.push_back(std::min(k_min, k_max));
  }
  if (k_max > log_top) {
    const int nu = std::max(1, static_cast<int>(std::ceil((k_max - log_top) / tail_w)));
    for (int i = 1; i <= nu; ++i)
      edges.push_back(log_top + (k_max - log_top) * static_cast<double>(i) / nu);
  }
  for (double b : opt.extra_breakpoints)
    if (b > 0.0 && b < k_max) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-307; }),
              edges.end());

  std::vector<double> gx, gw;
  detail::gauss_legendre(order, gx, gw);

  FrequencyGrid g;
  g.k_min = k_min;
  g.k_max = k_max;
  std::vector<double> pos_nodes, pos_weights;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int j = 0; j < order; ++j) {
      pos_nodes.push_back(mid + half * gx[static_cast<std::size_t>(j)]);
      pos_weights.push_back(half * gw[static_cast<std::size_t>(j)]);
    }
  }
  const std::size_t n = pos_nodes.size();
  g.nodes.resize(2 * n);
  g.weights.resize(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    g.nodes[n + j] = pos_nodes[j];
    g.weights[n + j] = pos_weights[j];
    g.nodes[n - 1 - j] = -pos_nodes[j];
    g.weights[n - 1 - j] = pos_weights[j];
  }
  return g;
}

//! Geometrically graded breakpoints packing panels of width ≥ min_width
//! around `center` inside [a,b]; used to resolve narrow resolvent peaks.
inline std::vector<double> graded_breakpoints(double a, double b, double center,
                                              double min_width) {
  std::vector<double> out;
  if (!(b > a) || !(min_width > 0.0)) return out;
  const double c = std::clamp(center, a, b);
  out.push_back(c);
  for (double wstep = min_width, p = c; p < b;) {
    p = std::min(b, p + wstep);
    out.push_back(p);
    wstep *= 2.0;
  }
  for (double wstep = min_width, p = c; p > a;) {
    p = std::max(a, p - wstep);
    out.push_back(p);
    wstep *= 2.0;
  }
  return out;
}

}  // namespace npspec
