#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "npspec/operators.hpp"
#include "npspec/symbols.hpp"
#include "npspec/transforms.hpp"

namespace npspec {

//! Window edge |ln(2|t|)|/q of the spectral parameter t; 0 at t = ±1/2.
inline double k_cut(double t, const DomainSpec& dom) {
  const double at = std::abs(t);
  if (at > 0.5) throw std::domain_error("k_cut: t outside [-1/2, 1/2]");
  if (at == 0.5) return 0.0;
  if (at == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(std::log(2.0 * at)) / dom.gap();
}

//! Resolution of the identity 𝔼(t): for t < 0 the negative-branch channel is
//! windowed to |k| ≤ k_cut(t) and the other channel dropped; for t ≥ 0 the
//! negative-branch channel is kept whole and the positive-branch channel
//! windowed to |k| ≥ k_cut(t). 𝔼(0) is the right limit; 𝔼(-1/2) = 0 and
//! 𝔼(1/2) = I. Orthogonal projection node-by-node.
inline PUDensity apply_E(double t, const PUDensity& f, const DomainSpec& dom) {
  if (std::abs(t) > 0.5) throw std::domain_error("apply_E: t outside [-1/2, 1/2]");
  PUDensity out;
  out.grid = f.grid;
  const std::size_t n = f.size();
  out.ch1.assign(n, Complex{});
  out.ch2.assign(n, Complex{});
  const int neg = negative_channel(dom), pos = positive_channel(dom);
  if (t < 0.0) {
    const double kc = k_cut(t, dom);
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(f.grid->nodes[j]) <= kc) out.channel(neg)[j] = f.channel(neg)[j];
  } else {
    out.channel(neg) = f.channel(neg);
    const double kc = (t == 0.0) ? std::numeric_limits<double>::infinity() : k_cut(t, dom);
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(f.grid->nodes[j]) >= kc) out.channel(pos)[j] = f.channel(pos)[j];
  }
  return out;
}

//! Shape-preserving cubic interpolation of the channel modulus plus local
//! phase interpolation; evaluates channels between grid nodes.
class ChannelInterpolator {
 public:
  ChannelInterpolator() = default;
  ChannelInterpolator(const std::vector<double>& x, const std::vector<Complex>& v)
      : x_(x), v_(v), m_(x.size()), d_(x.size()) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) m_[i] = std::abs(v[i]);
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x[i + 1] - x[i];
      del[i] = (m_[i + 1] - m_[i]) / h[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (del[i - 1] * del[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1], w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
      }
    }
    d_[0] = edge_slope(h[0], h[1], del[0], del[1]);
    d_[n - 1] = edge_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
  }

  Complex operator()(double k) const {
    const std::size_t n = x_.size();
    if (k <= x_.front()) return v_.front() * decay_guard(k, x_.front());
    if (k >= x_.back()) return v_.back() * decay_guard(k, x_.back());
    const std::size_t j =
        static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), k) - x_.begin()) - 1;
    const double h = x_[j + 1] - x_[j];
    const double s = (k - x_[j]) / h;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    const double mag = h00 * m_[j] + h10 * h * d_[j] + h01 * m_[j + 1] + h11 * h * d_[j + 1];

    double phase;
    if (m_[j] == 0.0 && m_[j + 1] == 0.0) {
      phase = 0.0;
    } else if (m_[j] == 0.0) {
      phase = std::arg(v_[j + 1]);
    } else if (m_[j + 1] == 0.0) {
      phase = std::arg(v_[j]);
    } else {
      phase = std::arg(v_[j]) + s * std::arg(v_[j + 1] * std::conj(v_[j]) /
                                             (m_[j] * m_[j + 1]));
    }
    return std::polar(std::max(0.0, mag), phase);
  }

 private:
  static double edge_slope(double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) return 0.0;
    if (std::abs(d) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return d;
  }
  static double decay_guard(double, double) { return 1.0; }

  std::vector<double> x_;
  std::vector<Complex> v_;
  std::vector<double> m_;  // modulus samples
  std::vector<double> d_;  // pchip slopes
};

//! Channel evaluators for one density, usable off the grid nodes.
struct InterpolatedDensity {
  ChannelInterpolator ch1, ch2;
  explicit InterpolatedDensity(const PUDensity& f)
      : ch1(f.grid->nodes, f.ch1), ch2(f.grid->nodes, f.ch2) {}
  Complex channel(int c, double k) const { return c == 1 ? ch1(k) : ch2(k); }
};

namespace detail_spectral {
//! (1±2t)/(2|t ln(2|t|)|): + for the crescent, - for touching disks.
inline double density_prefactor(double t, const DomainSpec& dom) {
  const double num = dom.kind == DomainKind::Crescent ? 1.0 + 2.0 * t : 1.0 - 2.0 * t;
  return num / (2.0 * std::abs(t * std::log(2.0 * std::abs(t))));
}
}  // namespace detail_spectral

//! Radon-Nikodym density of d⟨f, 𝔼(t)g⟩ at t ∈ (-1/2,0)∪(0,1/2), channels
//! evaluated at ±k_cut(t) by interpolation.
inline Complex measure_density(const InterpolatedDensity& f, const InterpolatedDensity& g,
                               double t, const DomainSpec& dom) {
  if (t == 0.0) throw std::domain_error("measure_density: t = 0 is singular");
  if (std::abs(t) >= 0.5)
    throw std::domain_error("measure_density: use the endpoint limit accessors");
  const double kappa = k_cut(t, dom);
  const int c = t < 0.0 ? negative_channel(dom) : positive_channel(dom);
  const Complex val = f.channel(c, kappa) * std::conj(g.channel(c, kappa)) +
                      f.channel(c, -kappa) * std::conj(g.channel(c, -kappa));
  return detail_spectral::density_prefactor(t, dom) * val;
}

inline Complex measure_density(const PUDensity& f, const PUDensity& g, double t,
                               const DomainSpec& dom) {
  require_same_grid(f, g);
  return measure_density(InterpolatedDensity{f}, InterpolatedDensity{g}, t, dom);
}

//! Endpoint limits of the measure density. The difference channel (channel 1)
//! carries the finite limit 2 f̂₁(0) conj(ĝ₁(0)) at its endpoint (t = -1/2 for
//! the crescent, +1/2 for touching disks); the mean-zero channel's endpoint
//! limit is 0 for densities of the O(|k|) class.
inline Complex measure_density_limit_lower(const PUDensity& f, const PUDensity& g,
                                           const DomainSpec& dom) {
  if (dom.kind != DomainKind::Crescent) return Complex{};
  const InterpolatedDensity fi{f}, gi{g};
  return 2.0 * fi.ch1(0.0) * std::conj(gi.ch1(0.0));
}
inline Complex measure_density_limit_upper(const PUDensity& f, const PUDensity& g,
                                           const DomainSpec& dom) {
  if (dom.kind == DomainKind::Crescent) return Complex{};
  const InterpolatedDensity fi{f}, gi{g};
  return 2.0 * fi.ch1(0.0) * std::conj(gi.ch1(0.0));
}

//! ∫ w(t) d⟨f, 𝔼(t)g⟩ as a reweighted node sum: the t-variable is the symbol
//! value carried by each channel at each node, so w ≡ 1 reproduces ⟨f,g⟩ and
//! w = t reproduces ⟨f, 𝒦*g⟩ without interpolation error.
inline Complex spectral_integral(const PUDensity& f, const PUDensity& g,
                                 const std::function<double(double)>& weight,
                                 const DomainSpec& dom) {
  require_same_grid(f, g);
  const auto& grid = *f.grid;
  Complex acc{};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const SymbolValue s = symbol_S(grid.nodes[j], dom);
    const SymbolValue t = symbol_K(grid.nodes[j], dom);
    acc += grid.weights[j] *
           (weight(t.d1) * s.d1 * f.ch1[j] * std::conj(g.ch1[j]) +
            weight(t.d2) * s.d2 * f.ch2[j] * std::conj(g.ch2[j]));
  }
  return acc;
}

namespace detail_spectral {

//! ∫_a^b 𝕊_cc(k)(|f_c(k)|² + |f_c(-k)|²) dk by Gauss panels on interpolated
//! channels; the k-image of a spectral window.
inline double window_integral(const InterpolatedDensity& f, int c, double a, double b,
                              const DomainSpec& dom, double k_top) {
  a = std::clamp(a, 0.0, k_top);
  b = std::clamp(b, 0.0, k_top);
  if (!(b > a)) return 0.0;
  std::vector<double> gx, gw;
  npspec::detail::gauss_legendre(16, gx, gw);
  const int panels = 4;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double pa = a + (b - a) * p / panels, pb = a + (b - a) * (p + 1) / panels;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double k = 0.5 * (pa + pb) + 0.5 * (pb - pa) * gx[i];
      const double w = 0.5 * (pb - pa) * gw[i];
      const double scc = (c == 1) ? symbol_S(k, dom).d1 : symbol_S(k, dom).d2;
      acc += w * scc * (std::norm(f.channel(c, k)) + std::norm(f.channel(c, -k)));
    }
  }
  return acc;
}

}  // namespace detail_spectral

//! ⟨f, (𝔼(t2) - 𝔼(t1))f⟩ for t1 ≤ t2, evaluated as window integrals in k with
//! interpolated channels (a fixed-node sum would go lumpy once the window
//! falls below the node spacing).
inline double window_mass(const PUDensity& f, double t1, double t2, const DomainSpec& dom) {
  if (t1 > t2) std::swap(t1, t2);
  const InterpolatedDensity fi{f};
  const double k_top = f.grid->k_max;
  const int neg = negative_channel(dom), pos = positive_channel(dom);
  auto kc_neg = [&](double t) {  // window edge of the negative branch
    if (t <= -0.5) return 0.0;
    if (t >= 0.0) return k_top;
    return std::min(k_top, k_cut(t, dom));
  };
  auto kc_pos = [&](double t) {  // window edge of the positive branch
    if (t <= 0.0) return k_top;
    if (t >= 0.5) return 0.0;
    return std::min(k_top, k_cut(t, dom));
  };
  return detail_spectral::window_integral(fi, neg, kc_neg(t1), kc_neg(t2), dom, k_top) +
         detail_spectral::window_integral(fi, pos, kc_pos(t2), kc_pos(t1), dom, k_top);
}

//! Squared norms ‖(𝔼(t) - 𝔼(t-h))f‖² for each step h: the spectral window
//! mass, which for absolutely continuous spectrum decays linearly in h.
inline std::vector<double> continuity_probe(const PUDensity& f, double t,
                                            std::span<const double> h_seq,
                                            const DomainSpec& dom) {
  if (std::abs(t) > 0.5) throw std::domain_error("continuity_probe: t outside [-1/2,1/2]");
  std::vector<double> out;
  out.reserve(h_seq.size());
  for (double h : h_seq) out.push_back(window_mass(f, t - h, t, dom));
  return out;
}

//! Sampled diagonal spectral measure: the t-grid is the image of the k-grid
//! under both branch maps, so mass identities hold without interpolation.
struct SpectralMeasure {
  std::vector<double> t_nodes;
  std::vector<double> weights;  // |dt| quadrature weights
  std::vector<double> density;  // Q(t) ≥ 0
  std::vector<int> channel;
  std::vector<double> kappa;    // |k| preimage of each node
  double limit_lower{};         // Q(-1/2⁺)
  double limit_upper{};         // Q(+1/2⁻)

  double mass() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < t_nodes.size(); ++j) acc += weights[j] * density[j];
    return acc;
  }
};

inline SpectralMeasure sample_measure(const PUDensity& f, const DomainSpec& dom) {
  const auto& grid = *f.grid;
  const double q = dom.gap();
  struct Row {
    double t, w, dens, kap;
    int ch;
  };
  std::vector<Row> rows;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double k = grid.nodes[j];
    if (k <= 0.0) continue;
    // both ±k contribute to the same t; fold the mirror node in
    const std::size_t jm = grid.size() - 1 - j;
    const SymbolValue s = symbol_S(k, dom);
    const SymbolValue tk = symbol_K(k, dom);
    for (int c : {1, 2}) {
      const double t = (c == 1) ? tk.d1 : tk.d2;
      const double scc = (c == 1) ? s.d1 : s.d2;
      const double mag = std::norm(f.channel(c)[j]) + std::norm(f.channel(c)[jm]);
      const double jac = q * std::abs(t);  // |dt/dk|
      rows.push_back({t, grid.weights[j] * jac, scc * mag / jac, k, c});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
  SpectralMeasure m;
  for (const Row& r : rows) {
    m.t_nodes.push_back(r.t);
    m.weights.push_back(r.w);
    m.density.push_back(r.dens);
    m.channel.push_back(r.ch);
    m.kappa.push_back(r.kap);
  }
  m.limit_lower = measure_density_limit_lower(f, f, dom).real();
  m.limit_upper = measure_density_limit_upper(f, f, dom).real();
  return m;
}

}  // namespace npspec
