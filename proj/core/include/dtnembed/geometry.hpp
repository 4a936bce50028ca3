#pragma once

#include <cstddef>
#include <vector>

namespace dtnembed {

/// Semicircle of radius a (Γ_I, y > 0) on top of the rectangle
/// (-a, a) × (-b, 0) (Γ_II). The interface S is the segment y = 0, |x| < a,
/// with unit normal n = (0, -1) pointing from Γ_I into Γ_II, so the normal
/// derivative on S is -∂/∂y.
struct CompositeDomain {
  double a = 1.0;
  double b = 1.5;

  double interface_length() const noexcept { return 2.0 * a; }
  double semicircle_area() const noexcept;
  double rectangle_area() const noexcept { return 2.0 * a * b; }
};

/// Throws Error(NonPositiveGeometry) unless a > 0 and b > 0.
CompositeDomain make_domain(double a, double b);

struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lo = 0.0;
  double hi = 0.0;

  std::size_t size() const noexcept { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

struct QuadraturePoint2D {
  double x = 0.0;
  double y = 0.0;
  double r = 0.0;    // polar radius
  double phi = 0.0;  // angle from the +y axis, positive for x < 0
};

/// 2-D rule over Γ_I. Weights include the polar measure r dr dφ.
struct QuadratureRule2D {
  std::vector<QuadraturePoint2D> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) sum += weights[i] * f(points[i].x, points[i].y);
    return sum;
  }
};

/// Gauss-Legendre rule with `order` nodes on (lo, hi), exact for polynomials of
/// degree 2·order - 1. Nodes ascend strictly.
QuadratureRule1D gauss_legendre(int order, double lo, double hi);

/// Tensor Gauss-Legendre rule in polar coordinates: r ∈ (0, a), φ ∈ (-π/2, π/2).
QuadratureRule2D semicircle_rule(const CompositeDomain& domain, int n_r, int n_phi);

/// Tensor Gauss-Legendre rule over Γ_II in Cartesian coordinates. The polar
/// fields of each point are left at zero.
QuadratureRule2D rectangle_rule(const CompositeDomain& domain, int n_x, int n_y);

/// Single-panel Gauss-Legendre rule on S, x ∈ (-a, a).
QuadratureRule1D interface_rule(const CompositeDomain& domain, int n_s);

/// Composite rule on S with two Gauss-Legendre panels (-a, 0) and (0, a),
/// `n_s / 2` nodes each (n_s must be even). Traces of the Γ_I basis have a
/// kink at the origin; splitting there keeps their projections spectrally
/// accurate.
QuadratureRule1D split_interface_rule(const CompositeDomain& domain, int n_s);

enum class Region { Semicircle, Rectangle, Interface, Outside };

inline constexpr double kInterfaceTolerance = 1e-12;

/// Points on the outer boundary ∂Γ classify as Outside.
Region classify_point(const CompositeDomain& domain, double x, double y);

struct PolarPoint {
  double r = 0.0;
  double phi = 0.0;
};

/// Polar coordinates used by the Γ_I basis: x = -r sin φ, y = r cos φ, so
/// φ > 0 for x < 0. Throws OutsideSubdomain unless (x, y) is in the closure of Γ_I.
PolarPoint cartesian_to_polar(const CompositeDomain& domain, double x, double y);

}  // namespace dtnembed
