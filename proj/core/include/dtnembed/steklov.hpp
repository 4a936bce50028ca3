#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dtnembed/geometry.hpp"

namespace dtnembed {

/// Steklov problem on the rectangle: Δψ + κ²ψ = 0 in Γ_II, ψ = 0 on the
/// outer walls, ∇⊥ψ = b ψ on S. Mode n has trace
///   ψ_n(x) = sin(nπ(x+a)/2a) / √a
/// (orthonormal on S) and eigenvalue b_n(κ).

enum class SteklovRegime { Oscillatory, Evanescent };

inline constexpr double kDirichletPoleGuard = 1e-8;  // on |sin(μb)|
inline constexpr double kNeumannPoleGuard = 1e-12;   // on |b_n|
inline constexpr double kRegimeSwitchBand = 1e-12;   // on |κ² - λ_n|
inline constexpr int kDefaultSteklovTruncation = 200;

struct SteklovMode {
  int n = 1;
  double lambda_n = 0.0;  // (nπ/2a)²
  SteklovRegime regime = SteklovRegime::Oscillatory;
  double wavenumber = 0.0;  // μ (oscillatory) or s (evanescent), both ≥ 0
  double b_n = 0.0;
  double db_n_dkappa = 0.0;
  double amplitude = 0.0;  // A_n; 1/√a on the regime switch
};

/// Full mode data. Throws ResonanceError(NearDirichletResonance) when
/// |sin(μb)| < 1e-8 on the oscillatory branch.
SteklovMode steklov_mode(double kappa, int n, const CompositeDomain& domain);

double steklov_eigenvalue(double kappa, int n, const CompositeDomain& domain);

/// ∂b_n/∂κ, analytic; nonnegative for κ > 0.
double steklov_eigenvalue_derivative(double kappa, int n, const CompositeDomain& domain);

/// ψ_n(κ; x, y) on the closed rectangle. Throws OutsideSubdomain elsewhere.
double steklov_mode_field(double kappa, int n, const CompositeDomain& domain, double x, double y);

/// Vertical factor of ψ_n, normalized to 1 on S and 0 at y = -b, so that
/// ψ_n(x, y) = steklov_trace(n, x) · steklov_profile(κ, n, y).
double steklov_profile(double kappa, int n, const CompositeDomain& domain, double y);

/// Interface trace ψ_n(x), independent of κ.
double steklov_trace(int n, const CompositeDomain& domain, double x);

/// Closed-form ∫_{Γ_II} ψ_n², which equals (1/2κ)·∂b_n/∂κ.
double steklov_volume_norm(double kappa, int n, const CompositeDomain& domain);

/// b_n and ∂b_n/∂κ for n = 1..N at a single κ (vector index n-1).
struct SteklovSpectrum {
  double kappa = 0.0;
  Eigen::VectorXd b;
  Eigen::VectorXd db;

  int size() const noexcept { return static_cast<int>(b.size()); }
  /// 1/b_n; throws ResonanceError(NearNeumannResonance) if some |b_n| < 1e-12.
  Eigen::VectorXd reciprocal() const;
  /// ∂(1/b_n)/∂κ = -b'_n / b_n², same guard as reciprocal().
  Eigen::VectorXd reciprocal_derivative() const;
};

SteklovSpectrum steklov_spectrum(double kappa, int truncation, const CompositeDomain& domain);

/// N × n_s matrix of traces ψ_n at the rule's nodes, premultiplied by the weights,
/// so that `weighted_traces * samples` gives the projections (ψ_n | f).
Eigen::MatrixXd weighted_trace_matrix(int truncation, const CompositeDomain& domain,
                                      const QuadratureRule1D& rule);

/// c_n = (ψ_n | f), n = 1..N, for f sampled at the rule's nodes.
Eigen::VectorXd project_surface(const Eigen::VectorXd& samples, int truncation,
                                const CompositeDomain& domain, const QuadratureRule1D& rule);
Eigen::VectorXd project_surface(const std::vector<double>& samples, int truncation,
                                const CompositeDomain& domain, const QuadratureRule1D& rule);

/// Spectral action on Steklov coefficients; truncation is c.size().
Eigen::VectorXd apply_dtn(const Eigen::VectorXd& c, double kappa, const CompositeDomain& domain);
Eigen::VectorXd apply_ntd(const Eigen::VectorXd& c, double kappa, const CompositeDomain& domain);
Eigen::VectorXd apply_dtn_derivative(const Eigen::VectorXd& c, double kappa,
                                     const CompositeDomain& domain);
Eigen::VectorXd apply_ntd_derivative(const Eigen::VectorXd& c, double kappa,
                                     const CompositeDomain& domain);

}  // namespace dtnembed
