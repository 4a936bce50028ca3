#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dtnembed/assembly.hpp"
#include "dtnembed/errors.hpp"
#include "dtnembed/mode_estimate.hpp"

namespace dtnembed {

/// Default relative threshold (to the largest diagonal of Δ) below which the
/// pivoted factorization stops. The trial family becomes numerically
/// dependent as it grows, so Δ is only positive semidefinite in double.
inline constexpr double kDefaultRankTolerance = 1e-13;

struct SolverOptions {
  /// 0 requests a plain Cholesky factorization of the whole metric.
  double rank_tolerance = kDefaultRankTolerance;
};

/// Generalized eigenpairs Λx = FΔx. Values ascend. Columns of `vectors` are
/// Δ-orthonormal, zero outside `retained`, and have their largest-magnitude
/// component positive.
struct EigenSolution {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  std::vector<int> retained;  // basis indices kept by the factorization, ascending

  int size() const noexcept { return static_cast<int>(values.size()); }
  int rank() const noexcept { return static_cast<int>(retained.size()); }
};

/// Throws MetricNotPositiveDefinite if Δ has a clearly negative direction
/// (or any nonpositive pivot when rank_tolerance is 0).
EigenSolution solve_generalized(const MatrixPair& pair, const SolverOptions& options = {});

struct EigenDiagnostics {
  double residual = 0.0;          // max_γ ‖Λx - FΔx‖ / ‖Λ‖, all rows
  double orthonormality = 0.0;    // max |XᵀΔX - I|
  double retained_residual = 0.0; // same residual restricted to retained rows
};
EigenDiagnostics diagnose(const MatrixPair& pair, const EigenSolution& solution);

/// Index of the positive eigenvalue nearest to `previous_k_squared`; ties go
/// to the smaller index. Throws NoPositiveEigenvalue.
int select_mode(double previous_k_squared, const EigenSolution& solution);

enum class Tracking { Nearest, Overlap };

struct IterationConfig {
  double tol = 5e-5;
  int max_iter = 20;
  Tracking tracking = Tracking::Nearest;
  SolverOptions solver;
};

/// kappas[i] is the energy parameter of iteration i and estimates[i] the
/// resulting √F̃; kappas[i+1] = estimates[i].
struct IterationTrace {
  std::vector<double> kappas;
  std::vector<double> estimates;
  bool converged = false;
  int iterations = 0;
};

class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& message, IterationTrace trace)
      : Error(ErrorCode::NotConverged, message), trace_(std::move(trace)) {}
  const IterationTrace& trace() const noexcept { return trace_; }

 private:
  IterationTrace trace_;
};

struct IterationResult {
  ModeEstimate estimate;
  IterationTrace trace;
};

/// Fixed point κ ← √F̃ for the mode tracked from κ0, stopping once
/// |√F̃ - κ| < tol. Throws NotConvergedError after max_iter iterations;
/// resonance errors propagate.
IterationResult iterate_mode(const Assembler& assembler, Method method, double kappa0,
                             const IterationConfig& config = {});

}  // namespace dtnembed
