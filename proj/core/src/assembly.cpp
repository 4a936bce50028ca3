#include "dtnembed/assembly.hpp"

#include <string>

#include "dtnembed/errors.hpp"

namespace dtnembed {

std::string_view to_string(Method method) noexcept { return method == Method::DtN ? "dtn" : "ntd"; }

void validate(const QuadratureConfig& quad) {
  if (quad.n_r < 1 || quad.n_phi < 1) throw Error(ErrorCode::InvalidArgument, "quadrature n_r and n_phi must be >= 1");
  if (quad.n_s < 2 || quad.n_s % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "interface quadrature n_s must be even and >= 2");
  }
}

double relative_asymmetry(const Eigen::MatrixXd& a) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

Assembler::Assembler(const BasisSpec& spec, const CompositeDomain& domain, const QuadratureConfig& quad,
                     int truncation)
    : spec_(spec), domain_(make_domain(domain.a, domain.b)), quad_(quad), truncation_(truncation) {
  validate(spec_);
  validate(quad_);
  if (truncation_ < 1) throw Error(ErrorCode::InvalidArgument, "Steklov truncation must be >= 1");

  const auto volume = semicircle_rule(domain_, quad_.n_r, quad_.n_phi);
  const auto tables = basis_volume_tables(spec_, domain_, volume);
  const Eigen::Map<const Eigen::VectorXd> w(volume.weights.data(), static_cast<Eigen::Index>(volume.size()));
  const Eigen::MatrixXd weighted = tables.values * w.asDiagonal();
  gram_ = weighted * tables.values.transpose();
  laplacian_ = weighted * tables.laplacians.transpose();

  interface_ = split_interface_rule(domain_, quad_.n_s);
  trace_samples_ = basis_trace_matrix(spec_, domain_, interface_.nodes);
  normal_samples_ = basis_normal_derivative_matrix(spec_, domain_, interface_.nodes);
  const Eigen::Map<const Eigen::VectorXd> ws(interface_.weights.data(), static_cast<Eigen::Index>(interface_.size()));
  surface_ = trace_samples_ * ws.asDiagonal() * normal_samples_.transpose();

  const Eigen::MatrixXd weighted_psi = weighted_trace_matrix(truncation_, domain_, interface_);
  steklov_samples_ = weighted_psi * ws.cwiseInverse().asDiagonal();
  trace_projection_ = weighted_psi * trace_samples_.transpose();
  normal_projection_ = weighted_psi * normal_samples_.transpose();
}

MatrixPair Assembler::assemble(Method method, double kappa) const {
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
  const SteklovSpectrum steklov = steklov_spectrum(kappa, truncation_, domain_);
  MatrixPair pair;
  pair.kappa = kappa;
  pair.method = method;
  if (method == Method::DtN) {
    const Eigen::VectorXd energy = -steklov.b + 0.5 * kappa * steklov.db;
    const Eigen::VectorXd norm = steklov.db / (2.0 * kappa);
    const Eigen::MatrixXd& c = trace_projection_;
    pair.lambda = -laplacian_ + surface_ + c.transpose() * energy.asDiagonal() * c;
    pair.delta = gram_ + c.transpose() * norm.asDiagonal() * c;
  } else {
    const Eigen::VectorXd r = steklov.reciprocal();
    const Eigen::VectorXd dr = steklov.reciprocal_derivative();
    const Eigen::VectorXd energy = r - 0.5 * kappa * dr;
    const Eigen::VectorXd norm = -dr / (2.0 * kappa);
    const Eigen::MatrixXd& d = normal_projection_;
    pair.lambda = -laplacian_ - surface_.transpose() + d.transpose() * energy.asDiagonal() * d;
    pair.delta = gram_ + d.transpose() * norm.asDiagonal() * d;
  }
  pair.lambda_asymmetry = relative_asymmetry(pair.lambda);
  pair.delta_asymmetry = relative_asymmetry(pair.delta);
  pair.lambda = 0.5 * (pair.lambda + pair.lambda.transpose()).eval();
  pair.delta = 0.5 * (pair.delta + pair.delta.transpose()).eval();
  return pair;
}

MatrixPair assemble_dtn(double kappa, const BasisSpec& spec, const CompositeDomain& domain,
                        const QuadratureConfig& quad, int truncation) {
  return Assembler(spec, domain, quad, truncation).assemble(Method::DtN, kappa);
}

MatrixPair assemble_ntd(double kappa, const BasisSpec& spec, const CompositeDomain& domain,
                        const QuadratureConfig& quad, int truncation) {
  return Assembler(spec, domain, quad, truncation).assemble(Method::NtD, kappa);
}

}  // namespace dtnembed
