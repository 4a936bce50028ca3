#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <vector>

#include "dtnembed/geometry.hpp"

namespace dtnembed {

enum class Parity { Even, Odd };

std::string_view to_string(Parity parity) noexcept;

/// Trial family on the semicircle, in polar coordinates (r, φ):
///   Even: index 0 is r - a; then r sin(nα(r-a)) cos(mβφ)
///   Odd:                         r sin(nα(r-a)) sin(mβφ)
/// with n = 1..n_max, m = 1..m_max. Indices are 0-based and run row-major
/// in n then m after the linear function, so for Even the product (n, m)
/// sits at 1 + (n-1)·m_max + (m-1), for Odd at (n-1)·m_max + (m-1).
/// Every member vanishes on the arc r = a.
struct BasisSpec {
  Parity parity = Parity::Even;
  double alpha = 1.0;
  double beta = 1.0;
  int n_max = 15;
  int m_max = 15;

  struct Term {
    int n = 0;  // 0 marks the linear function r - a
    int m = 0;
  };

  int size() const noexcept { return n_max * m_max + (parity == Parity::Even ? 1 : 0); }
  /// Throws IndexOutOfRange.
  Term term(int index) const;
};

/// Throws InvalidArgument unless alpha, beta > 0 and n_max, m_max >= 1.
void validate(const BasisSpec& spec);

/// Value at (x, y) in the closed semicircle. Throws IndexOutOfRange, OutsideSubdomain.
double eval_basis(const BasisSpec& spec, int index, const CompositeDomain& domain, double x, double y);

/// Analytic Laplacian. Throws SingularOrigin for r < 1e-14.
double eval_basis_laplacian(const BasisSpec& spec, int index, const CompositeDomain& domain, double x,
                            double y);

/// Value on S at (x, 0), using φ = +π/2 for x < 0 and -π/2 for x > 0.
double basis_trace(const BasisSpec& spec, int index, const CompositeDomain& domain, double x);

/// -∂/∂y on S at (x, 0). On S this is -sign(x)·sin(nα(|x|-a))·G'(φ) with G
/// the angular factor. At x = 0 the Even value is the common one-sided limit
/// and the Odd value is the mean of the two opposite one-sided limits, 0.
double basis_normal_derivative_trace(const BasisSpec& spec, int index, const CompositeDomain& domain,
                                     double x);

/// Values and Laplacians of every basis function at every node of a
/// semicircle rule, as M × P matrices.
struct BasisVolumeTables {
  Eigen::MatrixXd values;
  Eigen::MatrixXd laplacians;
};
BasisVolumeTables basis_volume_tables(const BasisSpec& spec, const CompositeDomain& domain,
                                      const QuadratureRule2D& rule);

/// M × n values of the trace and the normal-derivative trace at the given x.
Eigen::MatrixXd basis_trace_matrix(const BasisSpec& spec, const CompositeDomain& domain,
                                   const std::vector<double>& xs);
Eigen::MatrixXd basis_normal_derivative_matrix(const BasisSpec& spec, const CompositeDomain& domain,
                                               const std::vector<double>& xs);

/// Σ coeffs[μ] φ_μ at (x, y) in the closed semicircle.
double eval_expansion(const BasisSpec& spec, const Eigen::VectorXd& coeffs, const CompositeDomain& domain,
                      double x, double y);

}  // namespace dtnembed
