#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "npspec/geometry.hpp"
#include "npspec/grid.hpp"
#include "npspec/trace.hpp"

//! Real-space reference implementations by direct singular-kernel quadrature
//! on the trace grid. Deliberately slow; used as ground truth for the
//! frequency-domain calculus in validation suites only.
namespace npspec::oracle {

namespace detail {

// ∫ u^m ln(a²+u²) du for m = 0..4 (a ≥ 0; 0·ln0 := 0)
inline double log_moment(int m, double u, double a) {
  if (u == 0.0 && a == 0.0) return 0.0;
  const double s = a * a + u * u;
  const double L = std::log(s);
  const double at = (a > 0.0) ? std::atan(u / a) : 0.0;
  const double a2 = a * a;
  switch (m) {
    case 0:
      return (u == 0.0) ? 2.0 * a * at : u * L - 2.0 * u + 2.0 * a * at;
    case 1:
      return 0.5 * (s * L - u * u);
    case 2:
      return (u * u * u / 3.0) * L -
             (2.0 / 3.0) * (u * u * u / 3.0 - a2 * u + a2 * a * at);
    case 3: {
      const double u2 = u * u;
      return 0.25 * (u2 * u2 - a2 * a2) * L - u2 * u2 / 8.0 + a2 * u2 / 4.0;
    }
    default: {
      const double u3 = u * u * u, u5 = u3 * u * u;
      return 0.2 * u5 * L - 0.4 * (0.2 * u5 - a2 * u3 / 3.0 + a2 * a2 * (u - a * at));
    }
  }
}

//! ∫_{t0}^{t1} p(t) ln(a² + (y-t)²) dt with p the quartic through five trace
//! samples around the segment; exact through the log singularity.
inline Complex log_segment(const BoundaryTrace& t, const std::vector<Complex>& g,
                           std::size_t seg, double y, double a) {
  const std::size_t n = t.size();
  constexpr std::size_t deg = 4;
  std::size_t i0 = (seg >= deg / 2) ? seg - deg / 2 : 0;
  if (i0 + deg >= n) i0 = n - 1 - deg;

  double u[deg + 1];
  Complex dd[deg + 1];
  for (std::size_t i = 0; i <= deg; ++i) {
    u[i] = t.y[i0 + i] - y;
    dd[i] = g[i0 + i];
  }
  for (std::size_t level = 1; level <= deg; ++level)
    for (std::size_t i = deg; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (u[i] - u[i - level]);

  // Newton form → monomials: poly = dd[deg]; then poly = poly·(x-u[i]) + dd[i]
  Complex coef[deg + 1] = {};
  coef[0] = dd[deg];
  std::size_t degree = 0;
  for (std::size_t i = deg; i-- > 0;) {
    for (std::size_t j = degree + 1; j-- > 1;) coef[j] = coef[j - 1] - u[i] * coef[j];
    coef[0] = dd[i] - u[i] * coef[0];
    ++degree;
  }

  const double ulo = t.y[seg] - y, uhi = t.y[seg + 1] - y;
  Complex out{};
  for (std::size_t m = 0; m <= deg; ++m)
    out += coef[m] * (log_moment(static_cast<int>(m), uhi, a) -
                      log_moment(static_cast<int>(m), ulo, a));
  return out;
}

//! h-weighted samples of one component.
inline std::vector<Complex> weighted_samples(const BoundaryTrace& t, const DomainSpec& dom,
                                             Component c) {
  const double xc = dom.line_abscissa(c);
  std::vector<Complex> g(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) g[j] = line_scale(xc, t.y[j]) * t.values(c)[j];
  return g;
}

//! Precomputed per-trace state. The density is split as φ_c = c∞ + residual,
//! where c∞ is the sampled value at the cusp (y = ±∞ ends of the grid): the
//! constant part has the closed-form single-disk potential, and only the
//! fast-decaying residual is quadratured. Without the split, a
//! non-integrable-in-φ density (constant on a circle) would truncate at
//! O(1/Y).
struct SlContext {
  const BoundaryTrace& trace;
  const DomainSpec& dom;
  std::vector<Complex> g[2];   // h·(φ - c∞) samples
  Complex anchor[2]{};         // ∫ ln(x_c²+t²) g dt
  Complex cusp_value[2]{};     // c∞ per component
  Complex total{};             // residual total charge

  SlContext(const BoundaryTrace& t, const DomainSpec& d) : trace(t), dom(d) {
    int i = 0;
    for (Component c : {Component::Outer, Component::Inner}) {
      const double xc = dom.line_abscissa(c);
      const auto& v = t.values(c);
      cusp_value[i] = 0.5 * (v.front() + v.back());
      g[i].resize(t.size());
      for (std::size_t j = 0; j < t.size(); ++j) {
        g[i][j] = line_scale(xc, t.y[j]) * (v[j] - cusp_value[i]);
        const double w = trace_weight(t, j);
        anchor[i] += w * std::log(xc * xc + t.y[j] * t.y[j]) * g[i][j];
        total += w * g[i][j];
      }
      ++i;
    }
  }
};

inline Complex sl_eval(const SlContext& ctx, StripPoint p) {
  const BoundaryTrace& t = ctx.trace;
  const double dy = t.dy();
  const std::size_t n = t.size();
  Complex acc{};
  int i = 0;
  for (Component c : {Component::Outer, Component::Inner}) {
    const double xc = ctx.dom.line_abscissa(c);
    const double a = std::abs(p.x - xc);
    const std::vector<Complex>& g = ctx.g[i];
    // kernel difference ln((x-x_c)²+(y-s)²) - ln(x_c²+s²); the symmetric
    // truncation pairs the O(1/s) tails of the difference. Near the line the
    // log kernel is integrated segment-by-segment against a local quartic
    // interpolant of g; mixing that with trapezoid segments would leave
    // O(dy²)·f' boundary defects at the scheme changeover, so the analytic
    // rule is applied to the whole range.
    Complex comp{};
    if (a < 3.0 * dy) {
      for (std::size_t j = 0; j + 1 < n; ++j) comp += log_segment(t, g, j, p.y, a);
    } else {
      for (std::size_t j = 0; j + 1 < n; ++j) {
        const double k0 = std::log(a * a + (p.y - t.y[j]) * (p.y - t.y[j]));
        const double k1 = std::log(a * a + (p.y - t.y[j + 1]) * (p.y - t.y[j + 1]));
        comp += 0.5 * dy * (k0 * g[j] + k1 * g[j + 1]);
      }
    }
    acc += comp - ctx.anchor[i];
    ++i;
  }
  acc *= 1.0 / (4.0 * M_PI);
  acc -= std::log(p.x * p.x + p.y * p.y) / (4.0 * M_PI) * ctx.total;

  // constant parts: 𝒮_{∂B_a}[1] = a ln a inside B_a, a ln|p - (a,0)| outside,
  // with ln|p - a| = ½ln((1-ax)²+a²y²) - ½ln(x²+y²) in strip coordinates
  i = 0;
  for (Component c : {Component::Outer, Component::Inner}) {
    const Disk disk = ctx.dom.disk(c);
    const double a = disk.signed_center;
    const double rad = disk.radius();
    const double xc = ctx.dom.line_abscissa(c);
    const bool inside = (a > 0.0) ? p.x > xc : p.x < xc;
    double logdist;
    if (inside) {
      logdist = std::log(rad);
    } else {
      const double u = 1.0 - a * p.x, v = a * p.y;
      logdist = 0.5 * std::log(u * u + v * v) - 0.5 * std::log(p.x * p.x + p.y * p.y);
    }
    acc += ctx.cusp_value[i] * rad * logdist;
    ++i;
  }
  return acc;
}

inline Complex sl_eval(const BoundaryTrace& t, StripPoint p, const DomainSpec& dom) {
  return sl_eval(SlContext{t, dom}, p);
}

}  // namespace detail

//! Single layer potential 𝒮[φ](Ψ(p)) by log-kernel quadrature; any density
//! (the total-charge term is kept). Near the boundary lines the log kernel is
//! integrated analytically against a local quadratic interpolant.
inline double sl_real_space(const BoundaryTrace& t, StripPoint p, const DomainSpec& dom) {
  return detail::sl_eval(t, p, dom).real();
}

//! NP operator by direct Poisson-kernel convolution between the lines plus
//! the constant charge terms; output in density (φ) units.
inline BoundaryTrace np_real_space(const BoundaryTrace& t, const DomainSpec& dom) {
  const double q = dom.gap();
  const double psign = dom.kind == DomainKind::Crescent ? 1.0 : -1.0;
  const Complex total = boundary_integral(t, dom);
  const Complex charge_outer = total / (4.0 * M_PI * dom.R);
  const Complex charge_inner =
      (dom.kind == DomainKind::Crescent ? -1.0 : 1.0) * total / (4.0 * M_PI * dom.r);

  const std::vector<Complex> gR = detail::weighted_samples(t, dom, Component::Outer);
  const std::vector<Complex> gI = detail::weighted_samples(t, dom, Component::Inner);

  BoundaryTrace out;
  out.y = t.y;
  out.outer.resize(t.size());
  out.inner.resize(t.size());
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double y = t.y[i];
    Complex convR{}, convI{};
    for (std::size_t j = 0; j < n; ++j) {
      const double d = y - t.y[j];
      const double pk = q / (q * q + d * d);
      const double w = trace_weight(t, j);
      convR += w * pk * gI[j];  // outer line sees the inner density
      convI += w * pk * gR[j];
    }
    const double hR = line_scale(dom.line_abscissa(Component::Outer), y);
    const double hI = line_scale(dom.line_abscissa(Component::Inner), y);
    out.outer[i] = charge_outer + psign * convR / (2.0 * M_PI * hR);
    out.inner[i] = charge_inner + psign * convI / (2.0 * M_PI * hI);
  }
  return out;
}

//! -∫_{∂Ω} ψ conj(𝒮[φ]) dσ by double quadrature; equals the 𝕊-weighted
//! frequency bilinear form for mean-zero densities.
inline Complex bilinear_real_space(const BoundaryTrace& psi, const BoundaryTrace& phi,
                                   const DomainSpec& dom) {
  const detail::SlContext ctx{phi, dom};
  Complex acc{};
  for (Component c : {Component::Outer, Component::Inner}) {
    const double xc = dom.line_abscissa(c);
    const auto& v = psi.values(c);
    for (std::size_t j = 0; j < psi.size(); ++j) {
      const Complex s = detail::sl_eval(ctx, StripPoint{xc, psi.y[j]});
      acc -= trace_weight(psi, j) * line_scale(xc, psi.y[j]) * v[j] * std::conj(s);
    }
  }
  return acc;
}

//! ∫_{Ω_w} |∇𝒮[φ]|² by tensor-grid quadrature of finite-difference gradients
//! of sl_real_space over the truncated strip (conformally invariant energy).
//! For touching disks the unbounded strip halves are truncated where the
//! far-field gradient is negligible.
inline double gradient_energy_real(const BoundaryTrace& t, const DomainSpec& dom, double w) {
  std::vector<double> gx, gw;
  npspec::detail::gauss_legendre(8, gx, gw);
  const detail::SlContext ctx{t, dom};

  // x panel edges per strip component; the touching-disk half planes are
  // truncated with geometrically growing panels away from the line
  std::vector<std::vector<double>> xedge_sets;
  const double xR = dom.line_abscissa(Component::Outer);
  const double xI = dom.line_abscissa(Component::Inner);
  if (dom.kind == DomainKind::Crescent) {
    std::vector<double> edges;
    const int nxp = std::max(2, static_cast<int>(std::ceil((xI - xR) / 0.25)));
    for (int i = 0; i <= nxp; ++i) edges.push_back(xR + (xI - xR) * i / nxp);
    xedge_sets.push_back(edges);
  } else {
    const double span = 24.0 / dom.gap();
    std::vector<double> right{xR}, left{xI};
    for (double step = 0.25; right.back() < xR + span; step *= 1.5)
      right.push_back(std::min(xR + span, right.back() + step));
    for (double step = 0.25; left.back() > xI - span; step *= 1.5)
      left.push_back(std::max(xI - span, left.back() - step));
    std::reverse(left.begin(), left.end());
    xedge_sets.push_back(right);
    xedge_sets.push_back(left);
  }

  // y panel edges: unit panels near the waist, geometric out to w
  std::vector<double> yedges{0.0};
  double e = 1.0;
  while (yedges.back() < w) {
    yedges.push_back(std::min(w, yedges.back() + e));
    if (yedges.back() >= 12.0) e *= 1.6;
  }

  const double fd = 1e-4;
  double energy = 0.0;
  for (const auto& xedges : xedge_sets) {
    for (std::size_t px = 0; px + 1 < xedges.size(); ++px) {
      const double a = xedges[px], b = xedges[px + 1];
      for (std::size_t ix = 0; ix < gx.size(); ++ix) {
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[ix];
        const double wx = 0.5 * (b - a) * gw[ix];
        for (std::size_t py = 0; py + 1 < yedges.size(); ++py) {
          for (std::size_t iy = 0; iy < gx.size(); ++iy) {
            const double y = 0.5 * (yedges[py] + yedges[py + 1]) +
                             0.5 * (yedges[py + 1] - yedges[py]) * gx[iy];
            const double wy = 0.5 * (yedges[py + 1] - yedges[py]) * gw[iy];
            for (double ys : {y, -y}) {
              const double vxp = detail::sl_eval(ctx, {x + fd, ys}).real();
              const double vxm = detail::sl_eval(ctx, {x - fd, ys}).real();
              const double vyp = detail::sl_eval(ctx, {x, ys + fd}).real();
              const double vym = detail::sl_eval(ctx, {x, ys - fd}).real();
              const double dvx = (vxp - vxm) / (2.0 * fd);
              const double dvy = (vyp - vym) / (2.0 * fd);
              energy += wx * wy * (dvx * dvx + dvy * dvy);
            }
          }
        }
      }
    }
  }
  return energy;
}

}  // namespace npspec::oracle
