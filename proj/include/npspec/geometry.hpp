#pragma once
#include <cmath>
#include <stdexcept>

namespace npspec {

//! Point in the physical plane where the two tangent circles live.
struct PlanePoint {
  double x{};
  double y{};
};

//! Point in the image plane of the inversion w = 1/z ("strip coordinates").
//! Boundary circles become the vertical lines x = 1/(2R), 1/(2r) or -1/(2r).
struct StripPoint {
  double x{};
  double y{};
};

enum class Component { Outer, Inner };
enum class DomainKind { Crescent, TouchingDisks };

//! Disk of radius |a| centered at (a,0); every such disk is tangent to the origin.
struct Disk {
  double signed_center{};
  double radius() const { return std::abs(signed_center); }
  PlanePoint center() const { return {signed_center, 0.0}; }
  bool contains(PlanePoint p) const {
    const double dx = p.x - signed_center;
    return dx * dx + p.y * p.y < radius() * radius();
  }
};

//! Two-circle domain: Crescent is B_R \ closure(B_r) with R > r > 0;
//! TouchingDisks is the exterior-tangent union B_R ∪ B_{-r}.
struct DomainSpec {
  DomainKind kind{DomainKind::Crescent};
  double R{1.0};
  double r{0.5};

  void validate() const {
    if (!(R > 0.0) || !(r > 0.0))
      throw std::invalid_argument("DomainSpec: radii must be positive");
    if (kind == DomainKind::Crescent && !(R > r))
      throw std::invalid_argument("DomainSpec: crescent requires R > r");
  }

  //! Gap parameter: q = 1/(2r) - 1/(2R) (crescent) or q1 = 1/(2r) + 1/(2R).
  double gap() const {
    validate();
    return kind == DomainKind::Crescent ? 0.5 / r - 0.5 / R : 0.5 / r + 0.5 / R;
  }

  //! Signed abscissa of the boundary line in strip coordinates.
  double line_abscissa(Component c) const {
    if (c == Component::Outer) return 0.5 / R;
    return kind == DomainKind::Crescent ? 0.5 / r : -0.5 / r;
  }

  Disk disk(Component c) const {
    if (c == Component::Outer) return Disk{R};
    return kind == DomainKind::Crescent ? Disk{r} : Disk{-r};
  }

  //! Sign σ in ∂u/∂ν = σ (1/h) ∂_x(u∘Ψ) on the component's line.
  //! ν points out of the crescent (into B_r on the inner circle) and out of
  //! both disks in the touching case; either way Outer→-1, Inner→+1.
  int normal_sign(Component c) const { return c == Component::Outer ? -1 : +1; }

  bool contains(PlanePoint p) const {
    if (kind == DomainKind::Crescent)
      return disk(Component::Outer).contains(p) && !disk(Component::Inner).contains(p);
    return disk(Component::Outer).contains(p) || disk(Component::Inner).contains(p);
  }
};

//! The inversion w = 1/z under the complex identification; its own inverse.
inline PlanePoint mobius(PlanePoint p) {
  const double n = p.x * p.x + p.y * p.y;
  if (n == 0.0) throw std::domain_error("mobius: origin is not in the domain of 1/z");
  return {p.x / n, -p.y / n};
}

//! Conformal scale factor h(x,y) = |Ψ'| = 1/(x²+y²).
inline double scale_factor(StripPoint p) {
  const double n = p.x * p.x + p.y * p.y;
  if (n == 0.0) throw std::domain_error("scale_factor: origin excluded");
  return 1.0 / n;
}

//! h along a vertical line: h_a(y) = 1/(x_c² + y²) with x_c = ±1/(2a).
inline double line_scale(double line_x, double y) {
  return 1.0 / (line_x * line_x + y * y);
}

//! Physical boundary point Ψ(x_c, y); y ∈ ℝ covers the circle minus the cusp.
inline PlanePoint boundary_param(const DomainSpec& dom, Component c, double y) {
  const double xc = dom.line_abscissa(c);
  return mobius(PlanePoint{xc, y});
}

inline PlanePoint strip_to_plane(StripPoint w) { return mobius(PlanePoint{w.x, w.y}); }
inline StripPoint plane_to_strip(PlanePoint p) {
  const PlanePoint w = mobius(p);
  return {w.x, w.y};
}

}  // namespace npspec
