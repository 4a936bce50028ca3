#pragma once

#include <Eigen/Dense>

#include "dtnembed/assembly.hpp"
#include "dtnembed/basis.hpp"
#include "dtnembed/geometry.hpp"

namespace dtnembed {

/// One converged solution of either embedding method.
struct ModeEstimate {
  Method method = Method::DtN;
  BasisSpec spec;
  CompositeDomain domain;
  double eigenvalue = 0.0;   // F̃, estimate of k²
  double k_estimate = 0.0;   // √F̃
  double kappa = 0.0;        // energy parameter of the last assembly
  int truncation = 0;
  Eigen::VectorXd gamma1_coeffs;  // over the basis, metric-normalized
  Eigen::VectorXd gamma2_coeffs;  // over the Steklov modes at `kappa`

  Parity parity() const noexcept { return spec.parity; }
};

}  // namespace dtnembed
