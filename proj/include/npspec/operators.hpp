#pragma once
#include <cmath>
#include <complex>
#include <stdexcept>

#include "npspec/symbols.hpp"
#include "npspec/transforms.hpp"

namespace npspec {

//! ⟨f,g⟩_{-1/2} = ∫ [f̂]ᵀ 𝕊 conj([ĝ]) dk; sesquilinear, conjugate-symmetric,
//! positive for nonzero f of the mean-zero class.
inline Complex inner_product(const PUDensity& f, const PUDensity& g, const DomainSpec& dom) {
  require_same_grid(f, g);
  const auto& grid = *f.grid;
  Complex acc{};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const SymbolValue s = symbol_S(grid.nodes[j], dom);
    acc += grid.weights[j] *
           (s.d1 * f.ch1[j] * std::conj(g.ch1[j]) + s.d2 * f.ch2[j] * std::conj(g.ch2[j]));
  }
  return acc;
}

inline double norm_sq(const PUDensity& f, const DomainSpec& dom) {
  return inner_product(f, f, dom).real();
}
inline double norm(const PUDensity& f, const DomainSpec& dom) {
  return std::sqrt(std::max(0.0, norm_sq(f, dom)));
}

//! Small-k diagnostic for membership in the mean-zero class: the plus channel
//! must vanish linearly, so |φ̂₂(k)|/k at the innermost node stays O(1).
inline double mean_zero_defect(const PUDensity& f) {
  const auto& grid = *f.grid;
  double best_k = 0.0;
  std::size_t idx = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double k = grid.nodes[j];
    if (k > 0.0 && (best_k == 0.0 || k < best_k)) {
      best_k = k;
      idx = j;
    }
  }
  return std::abs(f.ch2[idx]) / best_k;
}

//! 𝒦*f: channelwise multiplication by the 𝕂 diagonal.
inline PUDensity apply_np(const PUDensity& f, const DomainSpec& dom) {
  PUDensity out;
  out.grid = f.grid;
  const std::size_t n = f.size();
  out.ch1.resize(n);
  out.ch2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const SymbolValue k = symbol_K(f.grid->nodes[j], dom);
    out.ch1[j] = k.d1 * f.ch1[j];
    out.ch2[j] = k.d2 * f.ch2[j];
  }
  return out;
}

//! Distance from lam to the discretized symbol range; near-zero values mean
//! an ill-conditioned resolvent solve.
inline double resolvent_conditioning(Complex lam, const PUDensity& g, const DomainSpec& dom) {
  double best = std::numeric_limits<double>::infinity();
  for (double k : g.grid->nodes) {
    const SymbolValue s = symbol_K(k, dom);
    best = std::min(best, std::min(std::abs(lam - s.d1), std::abs(lam - s.d2)));
  }
  return best;
}

//! (λI - 𝒦*)⁻¹ g by channelwise division. Real λ inside [-1/2,1/2] hits the
//! spectrum and is rejected; real |λ| slightly above 1/2 is allowed.
inline PUDensity resolvent_apply(Complex lam, const PUDensity& g, const DomainSpec& dom) {
  if (lam.imag() == 0.0 && std::abs(lam.real()) <= 0.5)
    throw std::domain_error("resolvent_apply: real lambda inside the spectrum [-1/2,1/2]");
  PUDensity out;
  out.grid = g.grid;
  const std::size_t n = g.size();
  out.ch1.resize(n);
  out.ch2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const SymbolValue k = symbol_K(g.grid->nodes[j], dom);
    out.ch1[j] = g.ch1[j] / (lam - k.d1);
    out.ch2[j] = g.ch2[j] / (lam - k.d2);
  }
  return out;
}

//! Single layer potential at the strip point w = (x,y), i.e. 𝒮[f](Ψ(w)):
//!   -(1/√2π) ∫ (1/2|k|) Σ_c (e^{-|k||x_c-x|} e^{iky} - e^{-|k||x_c|}) φ̂_c(k) dk.
//! The cusp-anchored subtraction keeps the integrand bounded at k → 0 and is
//! summed as one piece. Continuous across the boundary lines.
inline double single_layer_eval(const PUDensity& f, StripPoint p, const DomainSpec& dom) {
  const ComponentSpectra s = apply_P_inverse(f);
  const auto& grid = *f.grid;
  const double xR = dom.line_abscissa(Component::Outer);
  const double xI = dom.line_abscissa(Component::Inner);
  Complex acc{};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double k = grid.nodes[j];
    const double ak = std::abs(k);
    const Complex osc = std::polar(1.0, k * p.y);
    const Complex term =
        (std::exp(-ak * std::abs(xR - p.x)) * osc - std::exp(-ak * std::abs(xR))) * s.outer[j] +
        (std::exp(-ak * std::abs(xI - p.x)) * osc - std::exp(-ak * std::abs(xI))) * s.inner[j];
    acc += grid.weights[j] * term / (2.0 * ak);
  }
  return -kInvSqrt2Pi * acc.real();
}

//! ‖∇𝒮[f]‖²_{L²(Ω)} = ⟨f, (½I - 𝒦*)f⟩_{-1/2} for mean-zero-class densities.
inline double gradient_energy(const PUDensity& f, const DomainSpec& dom) {
  const auto& grid = *f.grid;
  double acc = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const SymbolValue s = symbol_S(grid.nodes[j], dom);
    const SymbolValue k = symbol_K(grid.nodes[j], dom);
    acc += grid.weights[j] * (s.d1 * (0.5 - k.d1) * std::norm(f.ch1[j]) +
                              s.d2 * (0.5 - k.d2) * std::norm(f.ch2[j]));
  }
  return acc;
}

//! λ, λ₀ and B of the dissipative dielectric contrast ε_c + iδ (ε_m = 1).
struct DielectricLambda {
  Complex lambda;
  double lambda0;
  double B;
};

inline DielectricLambda make_lambda(double eps_c, double delta) {
  if (eps_c == 1.0) throw std::invalid_argument("make_lambda: eps_c = 1 is degenerate");
  if (!(delta > 0.0)) throw std::invalid_argument("make_lambda: delta must be positive");
  const Complex num{eps_c + 1.0, delta};
  const Complex den{2.0 * (eps_c - 1.0), 2.0 * delta};
  return {num / den, (eps_c + 1.0) / (2.0 * (eps_c - 1.0)), std::abs(delta / (eps_c - 1.0))};
}

}  // namespace npspec
