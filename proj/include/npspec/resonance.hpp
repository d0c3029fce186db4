#pragma once
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "npspec/operators.hpp"
#include "npspec/spectral.hpp"
#include "npspec/transforms.hpp"

namespace npspec {

//! Polarized dipole a·∇δ_z placed outside the closed domain.
struct DipoleSource {
  PlanePoint z;
  double ax{1.0};
  double ay{0.0};
  Complex moment() const { return {ax, ay}; }
  Complex location() const { return {z.x, z.y}; }
};

//! ε_c + iδ inclusion in an ε_m = 1 background.
struct DielectricParams {
  double eps_c{};
  double delta{};
  DielectricLambda lam() const { return make_lambda(eps_c, delta); }
};

inline bool source_outside_closure(const DipoleSource& src, const DomainSpec& dom) {
  const Disk outer = dom.disk(Component::Outer);
  const Disk inner = dom.disk(Component::Inner);
  const double dR = std::hypot(src.z.x - outer.signed_center, src.z.y);
  const double dr = std::hypot(src.z.x - inner.signed_center, src.z.y);
  const double tol = 1e-12;
  if (dom.kind == DomainKind::Crescent)
    return dR > outer.radius() + tol || dr < inner.radius() - tol;
  return dR > outer.radius() + tol && dr > inner.radius() + tol;
}

//! Newtonian potential of the dipole, F(p) = a·(p-z) / (2π|p-z|²).
inline double newtonian_potential(const DipoleSource& src, PlanePoint p) {
  const double dx = p.x - src.z.x, dy = p.y - src.z.y;
  const double n = dx * dx + dy * dy;
  if (n == 0.0) throw std::domain_error("newtonian_potential: evaluation at the source");
  return (src.ax * dx + src.ay * dy) / (2.0 * M_PI * n);
}

inline PlanePoint newtonian_gradient(const DipoleSource& src, PlanePoint p) {
  const double dx = p.x - src.z.x, dy = p.y - src.z.y;
  const double n = dx * dx + dy * dy;
  if (n == 0.0) throw std::domain_error("newtonian_gradient: evaluation at the source");
  const double dot = src.ax * dx + src.ay * dy;
  return {(src.ax * n - 2.0 * dot * dx) / (2.0 * M_PI * n * n),
          (src.ay * n - 2.0 * dot * dy) / (2.0 * M_PI * n * n)};
}

//! ∂νF on the boundary in line coordinates. F∘Ψ = Re[aw / (2π(1-zw))] is the
//! real part of a holomorphic function of w = x+iy, so the x-derivative is
//! Re of its complex derivative a/(2π(1-zw)²).
inline double dipole_trace_value(const DipoleSource& src, const DomainSpec& dom, Component c,
                                 double y) {
  const double xc = dom.line_abscissa(c);
  const Complex w{xc, y};
  const Complex dz = src.moment() / (2.0 * M_PI) /
                     ((1.0 - src.location() * w) * (1.0 - src.location() * w));
  return dom.normal_sign(c) * dz.real() / line_scale(xc, y);
}

inline BoundaryTrace dipole_trace(const DipoleSource& src, const DomainSpec& dom, double y_max,
                                  std::size_t n) {
  if (!source_outside_closure(src, dom))
    throw std::invalid_argument("dipole_trace: source inside the closed domain");
  BoundaryTrace t = make_trace(y_max, n);
  for (std::size_t j = 0; j < t.size(); ++j) {
    t.outer[j] = dipole_trace_value(src, dom, Component::Outer, t.y[j]);
    t.inner[j] = dipole_trace_value(src, dom, Component::Inner, t.y[j]);
  }
  return t;
}

//! Closed-form h-weighted Fourier transforms of the dipole trace, by residue
//! integration of the rational line profile:
//!   𝓕(h_c ∂νF_c)(k) = σ_c |k| / (2√2π) · e^{-ikη} e^{-|k||d_c|} · (m or conj m),
//! with ζ = 1/z = ξ+iη, d_c = ξ - x_c, m = a/z²; m when sign(k) = sign(d_c).
//! Exact mean-zero behavior (each component is O(|k|)) comes for free.
struct DipoleChannels {
  DomainSpec dom;
  double xi{}, eta{};
  Complex m;
  double d_outer{}, d_inner{};
  int sign_outer{}, sign_inner{};

  DipoleChannels(const DipoleSource& src, const DomainSpec& d) : dom(d) {
    if (!source_outside_closure(src, d))
      throw std::invalid_argument("boundary_data: source inside the closed domain");
    const Complex z = src.location();
    const Complex zeta = 1.0 / z;
    xi = zeta.real();
    eta = zeta.imag();
    m = src.moment() / (z * z);
    d_outer = xi - d.line_abscissa(Component::Outer);
    d_inner = xi - d.line_abscissa(Component::Inner);
    sign_outer = d.normal_sign(Component::Outer);
    sign_inner = d.normal_sign(Component::Inner);
  }

  Complex component(double k, double dc, int sg) const {
    if (k == 0.0) return {};
    const Complex mm = (k * dc > 0.0) ? m : std::conj(m);
    return sg * std::abs(k) * 0.5 * kInvSqrt2Pi * std::exp(-std::abs(k * dc)) *
           std::polar(1.0, -k * eta) * mm;
  }
  Complex outer(double k) const { return component(k, d_outer, sign_outer); }
  Complex inner(double k) const { return component(k, d_inner, sign_inner); }
  Complex ch1(double k) const { return (-outer(k) + inner(k)) / kSqrt2; }
  Complex ch2(double k) const { return (outer(k) + inner(k)) / kSqrt2; }
  Complex channel(int c, double k) const { return c == 1 ? ch1(k) : ch2(k); }
};

//! PU∂νF sampled on a grid from the closed form.
inline PUDensity boundary_data(const DipoleSource& src, const DomainSpec& dom,
                               std::shared_ptr<const FrequencyGrid> grid) {
  const DipoleChannels ch(src, dom);
  PUDensity d;
  d.grid = std::move(grid);
  const std::size_t n = d.grid->size();
  d.ch1.resize(n);
  d.ch2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    d.ch1[j] = ch.ch1(d.grid->nodes[j]);
    d.ch2[j] = ch.ch2(d.grid->nodes[j]);
  }
  return d;
}

//! φ^δ = (λI - 𝒦*)⁻¹ ∂νF.
inline PUDensity solve_transmission(const DielectricParams& par, const DipoleSource& src,
                                    const DomainSpec& dom,
                                    std::shared_ptr<const FrequencyGrid> grid) {
  return resolvent_apply(par.lam().lambda, boundary_data(src, dom, std::move(grid)), dom);
}

//! Sampled spectral measure density Q(t) of ∂νF.
inline SpectralMeasure q_density(const DipoleSource& src, const DomainSpec& dom,
                                 std::shared_ptr<const FrequencyGrid> grid) {
  return sample_measure(boundary_data(src, dom, std::move(grid)), dom);
}

//! Q(t) from the closed-form channels (no grid, no interpolation).
inline double q_at(const DipoleSource& src, const DomainSpec& dom, double t) {
  if (t == 0.0 || std::abs(t) >= 0.5) throw std::domain_error("q_at: t in (-1/2,0)∪(0,1/2)");
  const DipoleChannels ch(src, dom);
  const double kappa = k_cut(t, dom);
  const int c = (t < 0.0) ? negative_channel(dom) : positive_channel(dom);
  const double val = std::norm(ch.channel(c, kappa)) + std::norm(ch.channel(c, -kappa));
  return detail_spectral::density_prefactor(t, dom) * val;
}

//! Center and half-width of 1/|λ-t|² = 1/((t-t₀)² + β²).
struct PoissonWindow {
  double t0{}, beta{};
};
inline PoissonWindow poisson_window(const DielectricLambda& dl) {
  const double B2 = dl.B * dl.B;
  return {(2.0 * dl.lambda0 + B2) / (2.0 * (1.0 + B2)),
          dl.B * (1.0 - 2.0 * dl.lambda0) / (2.0 * (1.0 + B2))};
}

//! ‖φ^δ‖²_{-1/2} = ∫ Q(t)/((t-t₀)²+β²) dt as a pulled-back node sum using the
//! explicit completed-square form.
inline double resonance_norm(const DielectricParams& par, const DipoleSource& src,
                             const DomainSpec& dom,
                             std::shared_ptr<const FrequencyGrid> grid) {
  const PUDensity f = boundary_data(src, dom, std::move(grid));
  const PoissonWindow pw = poisson_window(par.lam());
  const auto& g = *f.grid;
  double acc = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const SymbolValue s = symbol_S(g.nodes[j], dom);
    const SymbolValue t = symbol_K(g.nodes[j], dom);
    const double l1 = (t.d1 - pw.t0) * (t.d1 - pw.t0) + pw.beta * pw.beta;
    const double l2 = (t.d2 - pw.t0) * (t.d2 - pw.t0) + pw.beta * pw.beta;
    acc += g.weights[j] *
           (s.d1 * std::norm(f.ch1[j]) / l1 + s.d2 * std::norm(f.ch2[j]) / l2);
  }
  return acc;
}

//! Grid with extra panels resolving the Lorentzian of width β around t₀,
//! mapped to the frequency coordinate of the branch that carries t₀.
inline FrequencyGrid sweep_grid(double k_max, int n_per_decade, double k_min,
                                const DomainSpec& dom, const PoissonWindow& pw) {
  GridOptions opt;
  if (pw.t0 != 0.0 && std::abs(pw.t0) < 0.5 && pw.beta > 0.0) {
    const double q = dom.gap();
    const double half_window = 0.2;
    const double sgn = pw.t0 < 0.0 ? -1.0 : 1.0;
    const double lo = sgn * std::min(std::abs(pw.t0) + half_window, 0.4999999);
    const double hi = sgn * std::max(std::abs(pw.t0) - half_window, 1e-9);
    const double ka = std::min(k_cut(lo, dom), k_cut(hi, dom));
    const double kb = std::max(k_cut(lo, dom), k_cut(hi, dom));
    const double kc = k_cut(pw.t0, dom);
    const double min_w = pw.beta / (q * std::abs(pw.t0)) / 8.0;
    opt.extra_breakpoints = graded_breakpoints(ka, kb, kc, min_w);
  }
  return build_grid(k_max, n_per_decade, k_min, opt);
}

struct SweepPoint {
  double delta{};
  double norm_sq{};
};

//! Blow-up sweep: δ·‖φ^δ‖² extrapolated to δ = 0 (Richardson on the geometric
//! δ-sequence) against the closed-form prediction π|ε_c-1|/(1/2-λ₀) · Q(λ₀)
//! (half that endpoint value when λ₀ = -1/2). The π is the mass of the
//! normalized Lorentzian: δ/β' ∫(β'/π)/((t-t₀)²+β'²) Q dt → π·(δ/β')·Q(λ₀)
//! with δ/β' → 2|ε_c-1|/(1-2λ₀).
struct BlowupResult {
  double estimate{};
  double predicted{};
  std::vector<SweepPoint> sweep;
};

inline std::vector<double> default_delta_seq() {
  std::vector<double> d(7);
  for (int i = 0; i < 7; ++i) d[i] = 0.1 * std::pow(10.0, -0.5 * i);
  return d;
}

inline double richardson_limit(const std::vector<double>& deltas,
                               const std::vector<double>& values) {
  const std::size_t n = deltas.size();
  if (n < 2) return values.empty() ? 0.0 : values.front();
  const double rho = std::pow(deltas.back() / deltas.front(),
                              1.0 / static_cast<double>(n - 1));
  std::vector<double> t = values;  // ordered by decreasing δ
  for (std::size_t m = 1; m < n; ++m) {
    const double r = std::pow(rho, static_cast<double>(m));
    for (std::size_t i = 0; i + m < n; ++i) t[i] = (t[i + 1] - r * t[i]) / (1.0 - r);
  }
  return t[0];
}

inline BlowupResult blowup_limit(double eps_c, const DipoleSource& src, const DomainSpec& dom,
                                 double k_max, int n_per_decade, double k_min,
                                 std::vector<double> deltas = default_delta_seq()) {
  const double lambda0 = make_lambda(eps_c, 1.0).lambda0;
  if (lambda0 == 0.0)
    throw std::domain_error("blowup_limit: lambda0 = 0 has no order-δ limit; "
                            "use bounded_case_check");
  if (!(lambda0 >= -0.5 && lambda0 < 0.5))
    throw std::domain_error("blowup_limit: lambda0 outside [-1/2, 1/2)");

  BlowupResult out;
  std::vector<double> s;
  for (double d : deltas) {
    const DielectricParams par{eps_c, d};
    auto grid = std::make_shared<FrequencyGrid>(
        sweep_grid(k_max, n_per_decade, k_min, dom, poisson_window(par.lam())));
    const double ns = resonance_norm(par, src, dom, grid);
    out.sweep.push_back({d, ns});
    s.push_back(d * ns);
  }
  out.estimate = richardson_limit(deltas, s);

  const double factor = M_PI * std::abs(eps_c - 1.0) / (0.5 - lambda0);
  if (lambda0 == -0.5) {
    const DipoleChannels ch(src, dom);
    const int c = negative_channel(dom);
    const double q_end = (dom.kind == DomainKind::Crescent)
                             ? 2.0 * std::norm(ch.ch1(0.0))
                             : 2.0 * std::norm(ch.channel(c, 0.0));
    out.predicted = factor * 0.5 * q_end;
  } else {
    out.predicted = factor * q_at(src, dom, lambda0);
  }
  return out;
}

//! λ₀ = 0 (ε_c = -1): records the sweep of δ²‖φ^δ‖² and its analytic
//! majorant (4+δ²)² ∫|Q| dt; the order-δ blow-up does not occur here.
struct BoundedCaseResult {
  std::vector<SweepPoint> sweep;  // norm_sq holds δ²·‖φ^δ‖²
  double max_scaled{};
  double majorant{};
};

inline BoundedCaseResult bounded_case_check(const DipoleSource& src, const DomainSpec& dom,
                                            double k_max, int n_per_decade, double k_min,
                                            const std::vector<double>& deltas) {
  BoundedCaseResult out;
  auto grid = std::make_shared<FrequencyGrid>(build_grid(k_max, n_per_decade, k_min));
  const double q_mass = q_density(src, dom, grid).mass();
  double worst_delta = deltas.empty() ? 0.0 : deltas.front();
  for (double d : deltas) {
    const DielectricParams par{-1.0, d};
    auto g = std::make_shared<FrequencyGrid>(
        sweep_grid(k_max, n_per_decade, k_min, dom, poisson_window(par.lam())));
    const double scaled = d * d * resonance_norm(par, src, dom, g);
    out.sweep.push_back({d, scaled});
    if (scaled > out.max_scaled) {
      out.max_scaled = scaled;
      worst_delta = d;
    }
  }
  out.majorant = (4.0 + worst_delta * worst_delta) * (4.0 + worst_delta * worst_delta) * q_mass;
  return out;
}

//! Total field u = F + 𝒮[φ^δ] at a plane point.
inline double field_value(const DipoleSource& src, const PUDensity& solution,
                          const DomainSpec& dom, PlanePoint p) {
  const StripPoint w = plane_to_strip(p);
  return newtonian_potential(src, p) + single_layer_eval(solution, w, dom);
}

}  // namespace npspec
