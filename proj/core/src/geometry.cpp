#include "dtnembed/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dtnembed/errors.hpp"

namespace dtnembed {

double CompositeDomain::semicircle_area() const noexcept { return 0.5 * std::numbers::pi * a * a; }

CompositeDomain make_domain(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::NonPositiveGeometry,
                "a = " + std::to_string(a) + ", b = " + std::to_string(b) + " must both be positive");
  }
  return CompositeDomain{a, b};
}

namespace {

// Nodes and weights on (-1, 1) by Newton iteration on P_n from the
// Tricomi initial guess; symmetric pairs are filled together.
void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    const double theta = std::numbers::pi * (i + 0.75) / (n + 0.5);
    double z = std::cos(theta) * (1.0 - (n - 1.0) / (8.0 * n * n * n));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = z;
        p0 = 1.0;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = weight;
    w[n - 1 - i] = weight;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

}  // namespace

QuadratureRule1D gauss_legendre(int order, double lo, double hi) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "quadrature order must be >= 1");
  if (!(lo < hi)) {
    throw Error(ErrorCode::InvalidInterval,
                "lo = " + std::to_string(lo) + " must be below hi = " + std::to_string(hi));
  }
  QuadratureRule1D rule;
  rule.lo = lo;
  rule.hi = hi;
  if (order == 1) {
    rule.nodes = {0.5 * (lo + hi)};
    rule.weights = {hi - lo};
    return rule;
  }
  std::vector<double> x;
  std::vector<double> w;
  legendre_nodes(order, x, w);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = mid + half * x[i];
    rule.weights[i] = half * w[i];
  }
  return rule;
}

QuadratureRule2D semicircle_rule(const CompositeDomain& domain, int n_r, int n_phi) {
  const auto radial = gauss_legendre(n_r, 0.0, domain.a);
  const auto angular = gauss_legendre(n_phi, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
  QuadratureRule2D rule;
  rule.points.reserve(static_cast<std::size_t>(n_r) * n_phi);
  rule.weights.reserve(static_cast<std::size_t>(n_r) * n_phi);
  for (int i = 0; i < n_r; ++i) {
    const double r = radial.nodes[i];
    for (int j = 0; j < n_phi; ++j) {
      const double phi = angular.nodes[j];
      rule.points.push_back({-r * std::sin(phi), r * std::cos(phi), r, phi});
      rule.weights.push_back(radial.weights[i] * angular.weights[j] * r);
    }
  }
  return rule;
}

QuadratureRule2D rectangle_rule(const CompositeDomain& domain, int n_x, int n_y) {
  const auto gx = gauss_legendre(n_x, -domain.a, domain.a);
  const auto gy = gauss_legendre(n_y, -domain.b, 0.0);
  QuadratureRule2D rule;
  for (int i = 0; i < n_x; ++i) {
    for (int j = 0; j < n_y; ++j) {
      rule.points.push_back({gx.nodes[i], gy.nodes[j], 0.0, 0.0});
      rule.weights.push_back(gx.weights[i] * gy.weights[j]);
    }
  }
  return rule;
}

QuadratureRule1D interface_rule(const CompositeDomain& domain, int n_s) {
  return gauss_legendre(n_s, -domain.a, domain.a);
}

QuadratureRule1D split_interface_rule(const CompositeDomain& domain, int n_s) {
  if (n_s < 2 || n_s % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "split interface rule needs an even node count >= 2");
  }
  const auto left = gauss_legendre(n_s / 2, -domain.a, 0.0);
  const auto right = gauss_legendre(n_s / 2, 0.0, domain.a);
  QuadratureRule1D rule;
  rule.lo = -domain.a;
  rule.hi = domain.a;
  rule.nodes = left.nodes;
  rule.weights = left.weights;
  rule.nodes.insert(rule.nodes.end(), right.nodes.begin(), right.nodes.end());
  rule.weights.insert(rule.weights.end(), right.weights.begin(), right.weights.end());
  return rule;
}

Region classify_point(const CompositeDomain& domain, double x, double y) {
  if (std::abs(y) <= kInterfaceTolerance) {
    return std::abs(x) < domain.a ? Region::Interface : Region::Outside;
  }
  if (y > 0.0) {
    return x * x + y * y < domain.a * domain.a ? Region::Semicircle : Region::Outside;
  }
  if (y > -domain.b && std::abs(x) < domain.a) return Region::Rectangle;
  return Region::Outside;
}

PolarPoint cartesian_to_polar(const CompositeDomain& domain, double x, double y) {
  const double r = std::hypot(x, y);
  if (y < -kInterfaceTolerance || r > domain.a * (1.0 + 1e-12)) {
    throw Error(ErrorCode::OutsideSubdomain,
                "(" + std::to_string(x) + ", " + std::to_string(y) + ") is not in the closed semicircle");
  }
  // atan2(-x, y): zero on the +y axis, +π/2 on the negative x axis.
  const double phi = (r == 0.0) ? 0.0 : std::atan2(-x, std::max(y, 0.0));
  return {r, phi};
}

}  // namespace dtnembed
