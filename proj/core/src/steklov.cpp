#include "dtnembed/steklov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dtnembed/errors.hpp"

namespace dtnembed {

namespace {

void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::InvalidArgument, "kappa = " + std::to_string(kappa) + " must be positive");
  }
}

void check_index(int n) {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "Steklov index n = " + std::to_string(n) + " must be >= 1");
}

// (2x - sin 2x) / (2x sin² x); series below 0.1.
double oscillatory_kernel(double x) {
  if (x < 0.1) {
    const double x2 = x * x;
    return 2.0 / 3.0 +
           x2 * (4.0 / 45.0 + x2 * (4.0 / 315.0 + x2 * (8.0 / 4725.0 + x2 * (4.0 / 18711.0 + x2 * (5528.0 / 212837625.0)))));
  }
  const double s = std::sin(x);
  return (2.0 * x - std::sin(2.0 * x)) / (2.0 * x * s * s);
}

// (sinh 2y - 2y) / (2y sinh² y) = (coth y - y / sinh² y) / y, written with
// e = exp(-2y) so large y does not overflow.
double evanescent_kernel(double y) {
  if (y < 0.1) {
    const double y2 = y * y;
    return 2.0 / 3.0 +
           y2 * (-4.0 / 45.0 + y2 * (4.0 / 315.0 + y2 * (-8.0 / 4725.0 + y2 * (4.0 / 18711.0 - y2 * (5528.0 / 212837625.0)))));
  }
  const double e = std::exp(-2.0 * y);
  const double one_minus = -std::expm1(-2.0 * y);
  const double coth = (1.0 + e) / one_minus;
  const double y_over_sinh2 = 4.0 * y * e / (one_minus * one_minus);
  return (coth - y_over_sinh2) / y;
}

double wall_phase(int n, const CompositeDomain& domain, double x) {
  return n * std::numbers::pi * (x + domain.a) / (2.0 * domain.a);
}

}  // namespace

SteklovMode steklov_mode(double kappa, int n, const CompositeDomain& domain) {
  check_kappa(kappa);
  check_index(n);
  const double depth = domain.b;
  SteklovMode mode;
  mode.n = n;
  const double q = n * std::numbers::pi / (2.0 * domain.a);
  mode.lambda_n = q * q;
  const double gap = kappa * kappa - mode.lambda_n;
  const double inv_sqrt_a = 1.0 / std::sqrt(domain.a);

  if (std::abs(gap) < kRegimeSwitchBand) {
    mode.regime = SteklovRegime::Oscillatory;
    mode.wavenumber = 0.0;
    mode.b_n = -1.0 / depth;
    mode.db_n_dkappa = kappa * depth * (2.0 / 3.0);
    mode.amplitude = inv_sqrt_a / depth;
    return mode;
  }
  if (gap > 0.0) {
    const double mu = std::sqrt(gap);
    const double s = std::sin(mu * depth);
    if (std::abs(s) < kDirichletPoleGuard) {
      throw ResonanceError(ErrorCode::NearDirichletResonance, n, kappa,
                           "Steklov mode n = " + std::to_string(n) + " has a pole at kappa = " +
                               std::to_string(kappa) + " (|sin(mu b)| < 1e-8)");
    }
    mode.regime = SteklovRegime::Oscillatory;
    mode.wavenumber = mu;
    mode.b_n = -mu * std::cos(mu * depth) / s;
    mode.db_n_dkappa = kappa * depth * oscillatory_kernel(mu * depth);
    mode.amplitude = inv_sqrt_a / s;
  } else {
    const double sv = std::sqrt(-gap);
    const double y = sv * depth;
    mode.regime = SteklovRegime::Evanescent;
    mode.wavenumber = sv;
    // coth(y) = (1 + e) / (1 - e), e = exp(-2y)
    mode.b_n = -sv * (1.0 + std::exp(-2.0 * y)) / (-std::expm1(-2.0 * y));
    mode.db_n_dkappa = kappa * depth * evanescent_kernel(y);
    mode.amplitude = inv_sqrt_a / std::sinh(y);
  }
  return mode;
}

double steklov_eigenvalue(double kappa, int n, const CompositeDomain& domain) {
  return steklov_mode(kappa, n, domain).b_n;
}

double steklov_eigenvalue_derivative(double kappa, int n, const CompositeDomain& domain) {
  return steklov_mode(kappa, n, domain).db_n_dkappa;
}

double steklov_trace(int n, const CompositeDomain& domain, double x) {
  check_index(n);
  return std::sin(wall_phase(n, domain, x)) / std::sqrt(domain.a);
}

double steklov_profile(double kappa, int n, const CompositeDomain& domain, double y) {
  const SteklovMode mode = steklov_mode(kappa, n, domain);
  const double depth = domain.b;
  const double height = std::clamp(y + depth, 0.0, depth);  // distance from the bottom wall
  if (mode.wavenumber == 0.0) return height / depth;
  if (mode.regime == SteklovRegime::Oscillatory) {
    return std::sin(mode.wavenumber * height) / std::sin(mode.wavenumber * depth);
  }
  // sinh(s h) / sinh(s b) = exp(s (h - b)) (1 - exp(-2 s h)) / (1 - exp(-2 s b))
  const double s = mode.wavenumber;
  return std::exp(s * (height - depth)) * (-std::expm1(-2.0 * s * height)) / (-std::expm1(-2.0 * s * depth));
}

double steklov_mode_field(double kappa, int n, const CompositeDomain& domain, double x, double y) {
  const double tol = kInterfaceTolerance;
  if (std::abs(x) > domain.a + tol || y > tol || y < -domain.b - tol) {
    throw Error(ErrorCode::OutsideSubdomain,
                "(" + std::to_string(x) + ", " + std::to_string(y) + ") is not in the closed rectangle");
  }
  return steklov_trace(n, domain, x) * steklov_profile(kappa, n, domain, y);
}

double steklov_volume_norm(double kappa, int n, const CompositeDomain& domain) {
  const SteklovMode mode = steklov_mode(kappa, n, domain);
  return mode.db_n_dkappa / (2.0 * kappa);
}

Eigen::VectorXd SteklovSpectrum::reciprocal() const {
  Eigen::VectorXd r(b.size());
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    if (std::abs(b[i]) < kNeumannPoleGuard) {
      throw ResonanceError(ErrorCode::NearNeumannResonance, static_cast<int>(i + 1), kappa,
                           "Steklov eigenvalue b_" + std::to_string(i + 1) + " vanishes at kappa = " +
                               std::to_string(kappa));
    }
    r[i] = 1.0 / b[i];
  }
  return r;
}

Eigen::VectorXd SteklovSpectrum::reciprocal_derivative() const {
  const Eigen::VectorXd r = reciprocal();
  return -(db.array() * r.array() * r.array()).matrix();
}

SteklovSpectrum steklov_spectrum(double kappa, int truncation, const CompositeDomain& domain) {
  if (truncation < 1) throw Error(ErrorCode::InvalidArgument, "Steklov truncation must be >= 1");
  SteklovSpectrum spec;
  spec.kappa = kappa;
  spec.b.resize(truncation);
  spec.db.resize(truncation);
  for (int n = 1; n <= truncation; ++n) {
    const SteklovMode mode = steklov_mode(kappa, n, domain);
    spec.b[n - 1] = mode.b_n;
    spec.db[n - 1] = mode.db_n_dkappa;
  }
  return spec;
}

Eigen::MatrixXd weighted_trace_matrix(int truncation, const CompositeDomain& domain,
                                      const QuadratureRule1D& rule) {
  const auto ns = static_cast<Eigen::Index>(rule.size());
  Eigen::MatrixXd psi(truncation, ns);
  for (Eigen::Index j = 0; j < ns; ++j) {
    for (int n = 1; n <= truncation; ++n) {
      psi(n - 1, j) = rule.weights[j] * steklov_trace(n, domain, rule.nodes[j]);
    }
  }
  return psi;
}

Eigen::VectorXd project_surface(const Eigen::VectorXd& samples, int truncation,
                                const CompositeDomain& domain, const QuadratureRule1D& rule) {
  if (truncation < 1) throw Error(ErrorCode::InvalidArgument, "Steklov truncation must be >= 1");
  if (samples.size() != static_cast<Eigen::Index>(rule.size())) {
    throw Error(ErrorCode::InvalidArgument, "sample count does not match the interface rule");
  }
  return weighted_trace_matrix(truncation, domain, rule) * samples;
}

Eigen::VectorXd project_surface(const std::vector<double>& samples, int truncation,
                                const CompositeDomain& domain, const QuadratureRule1D& rule) {
  return project_surface(Eigen::Map<const Eigen::VectorXd>(samples.data(), static_cast<Eigen::Index>(samples.size())),
                         truncation, domain, rule);
}

Eigen::VectorXd apply_dtn(const Eigen::VectorXd& c, double kappa, const CompositeDomain& domain) {
  const auto spec = steklov_spectrum(kappa, static_cast<int>(c.size()), domain);
  return (spec.b.array() * c.array()).matrix();
}

Eigen::VectorXd apply_ntd(const Eigen::VectorXd& c, double kappa, const CompositeDomain& domain) {
  const auto spec = steklov_spectrum(kappa, static_cast<int>(c.size()), domain);
  return (spec.reciprocal().array() * c.array()).matrix();
}

Eigen::VectorXd apply_dtn_derivative(const Eigen::VectorXd& c, double kappa,
                                     const CompositeDomain& domain) {
  const auto spec = steklov_spectrum(kappa, static_cast<int>(c.size()), domain);
  return (spec.db.array() * c.array()).matrix();
}

Eigen::VectorXd apply_ntd_derivative(const Eigen::VectorXd& c, double kappa,
                                     const CompositeDomain& domain) {
  const auto spec = steklov_spectrum(kappa, static_cast<int>(c.size()), domain);
  return (spec.reciprocal_derivative().array() * c.array()).matrix();
}

}  // namespace dtnembed
