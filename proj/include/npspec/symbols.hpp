#pragma once
#include <cmath>
#include <limits>
#include <stdexcept>

#include "npspec/geometry.hpp"

namespace npspec {

//! Diagonal 2x2 symbol value in the (φ̂₁, φ̂₂) coordinates.
struct SymbolValue {
  double d1{};
  double d2{};
};

//! 𝕊(k) = (1/2|k|) diag(1-e^{-|k|q}, 1+e^{-|k|q}); same form for both domain
//! kinds with q = gap(). Positive definite for k ≠ 0.
inline SymbolValue symbol_S(double k, const DomainSpec& dom) {
  if (k == 0.0) throw std::domain_error("symbol_S: use symbol_S_zero_limit at k = 0");
  const double x = std::abs(k) * dom.gap();
  const double s = 0.5 / std::abs(k);
  // 1 - e^{-x} via expm1 keeps the minus channel accurate down to k_min
  return {-s * std::expm1(-x), s * (1.0 + std::exp(-x))};
}

//! k→0 limits: the minus channel tends to q/2, the plus channel diverges.
inline SymbolValue symbol_S_zero_limit(const DomainSpec& dom) {
  return {0.5 * dom.gap(), std::numeric_limits<double>::infinity()};
}

//! 𝕂(k) = ±(1/2)e^{-|k|q} diag(∓1, ±1): crescent diag(-1,+1), touching
//! disks diag(+1,-1). The diagonal entries are the spectral parameter values
//! carried by each channel at frequency k.
inline SymbolValue symbol_K(double k, const DomainSpec& dom) {
  const double e = 0.5 * std::exp(-std::abs(k) * dom.gap());
  return dom.kind == DomainKind::Crescent ? SymbolValue{-e, e} : SymbolValue{e, -e};
}

//! Channel whose 𝕂 entry is negative (spectral branch t < 0).
inline int negative_channel(const DomainSpec& dom) {
  return dom.kind == DomainKind::Crescent ? 1 : 2;
}
inline int positive_channel(const DomainSpec& dom) {
  return dom.kind == DomainKind::Crescent ? 2 : 1;
}

}  // namespace npspec
