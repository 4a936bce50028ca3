#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string_view>

#include "dtnembed/basis.hpp"
#include "dtnembed/geometry.hpp"
#include "dtnembed/steklov.hpp"

namespace dtnembed {

enum class Method { DtN, NtD };

std::string_view to_string(Method method) noexcept;

/// Quadrature orders: n_r × n_phi polar Gauss-Legendre nodes on the
/// semicircle and n_s nodes (two panels split at x = 0) on the interface.
/// The interface rule must resolve the highest retained Steklov trace, so
/// keep n_s ≥ 2N.
struct QuadratureConfig {
  int n_r = 80;
  int n_phi = 80;
  int n_s = 512;
};

void validate(const QuadratureConfig& quad);

struct MatrixPair {
  Eigen::MatrixXd lambda;
  Eigen::MatrixXd delta;
  double kappa = 0.0;
  Method method = Method::DtN;
  /// max|A - Aᵀ| / max|A| before symmetrization.
  double lambda_asymmetry = 0.0;
  double delta_asymmetry = 0.0;
};

/// Caches the κ-independent pieces of both methods for one basis:
///   gram(μ,ν)      = ⟨φ_μ | φ_ν⟩ over Γ_I
///   laplacian(μ,ν) = ⟨φ_μ | Δφ_ν⟩ over Γ_I
///   surface(μ,ν)   = (φ_μ | ∇⊥φ_ν) over S
///   trace_projection(n,μ)  = (ψ_n | φ_μ)
///   normal_projection(n,μ) = (ψ_n | ∇⊥φ_μ)
/// With b_n, b'_n the Steklov data at κ, r_n = 1/b_n and r'_n = -b'_n/b_n²:
///   DtN: Λ = -L + T + Cᵀ diag(-b + κb'/2) C,   Δ = G + Cᵀ diag(b'/2κ) C
///   NtD: Λ = -L - Tᵀ + Dᵀ diag(r - κr'/2) D,   Δ = G - Dᵀ diag(r'/2κ) D
class Assembler {
 public:
  Assembler(const BasisSpec& spec, const CompositeDomain& domain, const QuadratureConfig& quad = {},
            int truncation = kDefaultSteklovTruncation);

  MatrixPair assemble(Method method, double kappa) const;

  const BasisSpec& spec() const noexcept { return spec_; }
  const CompositeDomain& domain() const noexcept { return domain_; }
  const QuadratureConfig& quadrature() const noexcept { return quad_; }
  int truncation() const noexcept { return truncation_; }
  int size() const noexcept { return spec_.size(); }

  const Eigen::MatrixXd& gram() const noexcept { return gram_; }
  const Eigen::MatrixXd& laplacian() const noexcept { return laplacian_; }
  const Eigen::MatrixXd& surface() const noexcept { return surface_; }
  const Eigen::MatrixXd& trace_projection() const noexcept { return trace_projection_; }
  const Eigen::MatrixXd& normal_projection() const noexcept { return normal_projection_; }

  const QuadratureRule1D& interface_nodes() const noexcept { return interface_; }
  /// M × n_s samples of φ_μ and ∇⊥φ_μ at the interface nodes.
  const Eigen::MatrixXd& trace_samples() const noexcept { return trace_samples_; }
  const Eigen::MatrixXd& normal_samples() const noexcept { return normal_samples_; }
  /// N × n_s samples of ψ_n at the interface nodes.
  const Eigen::MatrixXd& steklov_samples() const noexcept { return steklov_samples_; }

 private:
  BasisSpec spec_;
  CompositeDomain domain_;
  QuadratureConfig quad_;
  int truncation_;
  QuadratureRule1D interface_;
  Eigen::MatrixXd gram_, laplacian_, surface_;
  Eigen::MatrixXd trace_projection_, normal_projection_;
  Eigen::MatrixXd trace_samples_, normal_samples_, steklov_samples_;
};

MatrixPair assemble_dtn(double kappa, const BasisSpec& spec, const CompositeDomain& domain,
                        const QuadratureConfig& quad = {}, int truncation = kDefaultSteklovTruncation);
MatrixPair assemble_ntd(double kappa, const BasisSpec& spec, const CompositeDomain& domain,
                        const QuadratureConfig& quad = {}, int truncation = kDefaultSteklovTruncation);

/// Largest relative asymmetry max|A - Aᵀ| / max|A|.
double relative_asymmetry(const Eigen::MatrixXd& a);

/// Independent trial functions on the two subdomains: Γ_I coefficients over
/// the basis and Γ_II coefficients over the Steklov modes at `kappa`.
struct TrialPair {
  Eigen::VectorXd gamma1_coeffs;
  Eigen::VectorXd gamma2_coeffs;
  double kappa = 0.0;
};

/// Γ_II coefficients whose trace is the projection of the Γ_I trace, c = C·ã.
Eigen::VectorXd matched_value_coefficients(const Assembler& assembler, const Eigen::VectorXd& gamma1);
/// Γ_II coefficients whose normal derivative is the projection of the Γ_I
/// normal derivative, c = (D·ã) / b.
Eigen::VectorXd matched_derivative_coefficients(const Assembler& assembler, const Eigen::VectorXd& gamma1,
                                                double kappa);

/// Discontinuous functional with interface mixing constant `mixing` (a) and
/// its partner 1 - a*:
///   F = -[⟨Ψ_I|ΔΨ_I⟩ + ⟨Ψ_II|ΔΨ_II⟩] / Q
///       - (a ∇⊥Ψ_I + (1-a) ∇⊥Ψ_II | Ψ_I - Ψ_II) / Q
///       + ((1-a*) Ψ_I + a* Ψ_II | ∇⊥Ψ_I - ∇⊥Ψ_II) / Q,
///   Q = ⟨Ψ_I|Ψ_I⟩ + ⟨Ψ_II|Ψ_II⟩,
/// with (f|g) conjugate-linear in f. Γ_II volume terms are analytic per
/// Steklov mode. Throws ZeroTrial when both coefficient vectors vanish.
std::complex<double> evaluate_discontinuous_functional(const Assembler& assembler, const TrialPair& trial,
                                                       std::complex<double> mixing);

/// Form for trials continuous across S:
///   F = -[⟨Ψ_I|ΔΨ_I⟩ + ⟨Ψ_II|ΔΨ_II⟩] / Q + (Ψ_I | ∇⊥Ψ_I - ∇⊥Ψ_II) / Q.
double evaluate_value_matched_functional(const Assembler& assembler, const TrialPair& trial);

/// Form for trials with continuous normal derivative across S:
///   F = -[⟨Ψ_I|ΔΨ_I⟩ + ⟨Ψ_II|ΔΨ_II⟩] / Q - (∇⊥Ψ_I | Ψ_I - Ψ_II) / Q.
double evaluate_derivative_matched_functional(const Assembler& assembler, const TrialPair& trial);

}  // namespace dtnembed
