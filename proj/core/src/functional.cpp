#include <string>

#include "dtnembed/assembly.hpp"
#include "dtnembed/errors.hpp"

namespace dtnembed {

namespace {

// Every scalar product the functional needs, for real trial functions.
struct Pieces {
  double volume_laplacian = 0.0;  // ⟨Ψ_I|ΔΨ_I⟩ + ⟨Ψ_II|ΔΨ_II⟩
  double norm = 0.0;              // ⟨Ψ_I|Ψ_I⟩ + ⟨Ψ_II|Ψ_II⟩
  double value_1_normal_1 = 0.0;  // (Ψ_I | ∇⊥Ψ_I)
  double value_1_normal_2 = 0.0;  // (Ψ_I | ∇⊥Ψ_II)
  double value_2_normal_1 = 0.0;  // (Ψ_II | ∇⊥Ψ_I)
  double value_2_normal_2 = 0.0;  // (Ψ_II | ∇⊥Ψ_II)
};

Pieces compute_pieces(const Assembler& assembler, const TrialPair& trial) {
  const Eigen::VectorXd& a = trial.gamma1_coeffs;
  const Eigen::VectorXd& c = trial.gamma2_coeffs;
  if (a.size() != assembler.size()) {
    throw Error(ErrorCode::InvalidArgument, "gamma1 coefficient count does not match the basis size");
  }
  if (c.size() != assembler.truncation()) {
    throw Error(ErrorCode::InvalidArgument, "gamma2 coefficient count does not match the Steklov truncation");
  }
  if (a.isZero(0.0) && c.isZero(0.0)) throw Error(ErrorCode::ZeroTrial, "both trial coefficient vectors vanish");

  const double kappa = trial.kappa;
  const SteklovSpectrum steklov = steklov_spectrum(kappa, assembler.truncation(), assembler.domain());
  const Eigen::VectorXd mode_norm = steklov.db / (2.0 * kappa);
  const double norm_2 = (c.array().square() * mode_norm.array()).sum();

  Pieces p;
  p.norm = a.dot(assembler.gram() * a) + norm_2;
  p.volume_laplacian = a.dot(assembler.laplacian() * a) - kappa * kappa * norm_2;
  if (!(p.norm > 0.0)) throw Error(ErrorCode::ZeroTrial, "trial norm is not positive");

  const auto& rule = assembler.interface_nodes();
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.size()));
  const Eigen::VectorXd value_1 = assembler.trace_samples().transpose() * a;
  const Eigen::VectorXd normal_1 = assembler.normal_samples().transpose() * a;
  const Eigen::VectorXd value_2 = assembler.steklov_samples().transpose() * c;
  const Eigen::VectorXd normal_2 = assembler.steklov_samples().transpose() * (steklov.b.array() * c.array()).matrix();
  auto product = [&](const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
    return (w.array() * f.array() * g.array()).sum();
  };
  p.value_1_normal_1 = product(value_1, normal_1);
  p.value_1_normal_2 = product(value_1, normal_2);
  p.value_2_normal_1 = product(value_2, normal_1);
  p.value_2_normal_2 = product(value_2, normal_2);
  return p;
}

}  // namespace

Eigen::VectorXd matched_value_coefficients(const Assembler& assembler, const Eigen::VectorXd& gamma1) {
  return assembler.trace_projection() * gamma1;
}

Eigen::VectorXd matched_derivative_coefficients(const Assembler& assembler, const Eigen::VectorXd& gamma1,
                                                double kappa) {
  const SteklovSpectrum steklov = steklov_spectrum(kappa, assembler.truncation(), assembler.domain());
  return (steklov.reciprocal().array() * (assembler.normal_projection() * gamma1).array()).matrix();
}

std::complex<double> evaluate_discontinuous_functional(const Assembler& assembler, const TrialPair& trial,
                                                       std::complex<double> mixing) {
  const Pieces p = compute_pieces(assembler, trial);
  // With the partner constant tied to 1 - a*, the mixing enters only through
  // a + a* = 2 Re a; grouping the terms that way keeps F real to the last bit.
  const double normal_2_jump = p.value_1_normal_2 - p.value_2_normal_2;  // (∇⊥Ψ_II | Ψ_I - Ψ_II)
  const double value_1_jump = p.value_1_normal_1 - p.value_1_normal_2;   // (Ψ_I | ∇⊥Ψ_I - ∇⊥Ψ_II)
  const double cross = (p.value_1_normal_2 + p.value_2_normal_1) - (p.value_1_normal_1 + p.value_2_normal_2);
  const double numerator = -p.volume_laplacian - normal_2_jump + value_1_jump + 2.0 * mixing.real() * cross;
  return numerator / p.norm;
}

double evaluate_value_matched_functional(const Assembler& assembler, const TrialPair& trial) {
  const Pieces p = compute_pieces(assembler, trial);
  return (-p.volume_laplacian + p.value_1_normal_1 - p.value_1_normal_2) / p.norm;
}

double evaluate_derivative_matched_functional(const Assembler& assembler, const TrialPair& trial) {
  const Pieces p = compute_pieces(assembler, trial);
  return (-p.volume_laplacian - (p.value_1_normal_1 - p.value_2_normal_1)) / p.norm;
}

}  // namespace dtnembed
