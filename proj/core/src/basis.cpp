#include "dtnembed/basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dtnembed/errors.hpp"

namespace dtnembed {

std::string_view to_string(Parity parity) noexcept { return parity == Parity::Even ? "even" : "odd"; }

BasisSpec::Term BasisSpec::term(int index) const {
  if (index < 0 || index >= size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "basis index " + std::to_string(index) + " outside [0, " + std::to_string(size()) + ")");
  }
  int k = index;
  if (parity == Parity::Even) {
    if (k == 0) return {0, 0};
    --k;
  }
  return {k / m_max + 1, k % m_max + 1};
}

void validate(const BasisSpec& spec) {
  if (!(spec.alpha > 0.0) || !(spec.beta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "basis alpha and beta must be positive");
  }
  if (spec.n_max < 1 || spec.m_max < 1) {
    throw Error(ErrorCode::InvalidArgument, "basis n_max and m_max must be >= 1");
  }
}

namespace {

struct Angular {
  double g;   // G(φ)
  double dg;  // G'(φ)
};

Angular angular(const BasisSpec& spec, int m, double phi) {
  const double w = m * spec.beta;
  if (spec.parity == Parity::Even) return {std::cos(w * phi), -w * std::sin(w * phi)};
  return {std::sin(w * phi), w * std::cos(w * phi)};
}

double value_polar(const BasisSpec& spec, const BasisSpec::Term& t, double a, double r, double phi) {
  if (t.n == 0) return r - a;
  return r * std::sin(t.n * spec.alpha * (r - a)) * angular(spec, t.m, phi).g;
}

double laplacian_polar(const BasisSpec& spec, const BasisSpec::Term& t, double a, double r, double phi) {
  if (r < 1e-14) {
    throw Error(ErrorCode::SingularOrigin, "basis Laplacian requested at the origin");
  }
  if (t.n == 0) return 1.0 / r;
  const double k = t.n * spec.alpha;
  const double w = t.m * spec.beta;
  const double s = std::sin(k * (r - a));
  const double ds = k * std::cos(k * (r - a));
  return angular(spec, t.m, phi).g * (3.0 * ds - r * k * k * s + (1.0 - w * w) * s / r);
}

double trace_value(const BasisSpec& spec, const BasisSpec::Term& t, double a, double x) {
  const double r = std::abs(x);
  const double phi = x < 0.0 ? 0.5 * std::numbers::pi : -0.5 * std::numbers::pi;
  return value_polar(spec, t, a, r, phi);
}

double trace_normal_derivative(const BasisSpec& spec, const BasisSpec::Term& t, double a, double x) {
  if (t.n == 0) return 0.0;
  const double s = std::sin(t.n * spec.alpha * (std::abs(x) - a));
  if (x == 0.0) {
    const double w = t.m * spec.beta;
    if (spec.parity == Parity::Even) return -s * w * std::sin(0.5 * w * std::numbers::pi);
    return 0.0;
  }
  const double phi = x < 0.0 ? 0.5 * std::numbers::pi : -0.5 * std::numbers::pi;
  const double sign = x < 0.0 ? -1.0 : 1.0;
  return -sign * s * angular(spec, t.m, phi).dg;
}

}  // namespace

double eval_basis(const BasisSpec& spec, int index, const CompositeDomain& domain, double x, double y) {
  const auto t = spec.term(index);
  const auto p = cartesian_to_polar(domain, x, y);
  return value_polar(spec, t, domain.a, p.r, p.phi);
}

double eval_basis_laplacian(const BasisSpec& spec, int index, const CompositeDomain& domain, double x,
                            double y) {
  const auto t = spec.term(index);
  const auto p = cartesian_to_polar(domain, x, y);
  return laplacian_polar(spec, t, domain.a, p.r, p.phi);
}

double basis_trace(const BasisSpec& spec, int index, const CompositeDomain& domain, double x) {
  return trace_value(spec, spec.term(index), domain.a, x);
}

double basis_normal_derivative_trace(const BasisSpec& spec, int index, const CompositeDomain& domain,
                                     double x) {
  return trace_normal_derivative(spec, spec.term(index), domain.a, x);
}

BasisVolumeTables basis_volume_tables(const BasisSpec& spec, const CompositeDomain& domain,
                                      const QuadratureRule2D& rule) {
  const int m = spec.size();
  const auto p = static_cast<Eigen::Index>(rule.size());
  BasisVolumeTables tables{Eigen::MatrixXd(m, p), Eigen::MatrixXd(m, p)};
  for (int mu = 0; mu < m; ++mu) {
    const auto t = spec.term(mu);
    for (Eigen::Index j = 0; j < p; ++j) {
      const auto& q = rule.points[j];
      tables.values(mu, j) = value_polar(spec, t, domain.a, q.r, q.phi);
      tables.laplacians(mu, j) = laplacian_polar(spec, t, domain.a, q.r, q.phi);
    }
  }
  return tables;
}

Eigen::MatrixXd basis_trace_matrix(const BasisSpec& spec, const CompositeDomain& domain,
                                   const std::vector<double>& xs) {
  const int m = spec.size();
  Eigen::MatrixXd out(m, static_cast<Eigen::Index>(xs.size()));
  for (int mu = 0; mu < m; ++mu) {
    const auto t = spec.term(mu);
    for (std::size_t j = 0; j < xs.size(); ++j) out(mu, j) = trace_value(spec, t, domain.a, xs[j]);
  }
  return out;
}

Eigen::MatrixXd basis_normal_derivative_matrix(const BasisSpec& spec, const CompositeDomain& domain,
                                               const std::vector<double>& xs) {
  const int m = spec.size();
  Eigen::MatrixXd out(m, static_cast<Eigen::Index>(xs.size()));
  for (int mu = 0; mu < m; ++mu) {
    const auto t = spec.term(mu);
    for (std::size_t j = 0; j < xs.size(); ++j) out(mu, j) = trace_normal_derivative(spec, t, domain.a, xs[j]);
  }
  return out;
}

double eval_expansion(const BasisSpec& spec, const Eigen::VectorXd& coeffs, const CompositeDomain& domain,
                      double x, double y) {
  if (coeffs.size() != spec.size()) {
    throw Error(ErrorCode::InvalidArgument, "coefficient count does not match the basis size");
  }
  const auto p = cartesian_to_polar(domain, x, y);
  double sum = 0.0;
  for (int mu = 0; mu < spec.size(); ++mu) {
    sum += coeffs[mu] * value_polar(spec, spec.term(mu), domain.a, p.r, p.phi);
  }
  return sum;
}

}  // namespace dtnembed
