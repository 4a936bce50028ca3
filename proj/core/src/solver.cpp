#include "dtnembed/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dtnembed {

namespace {

// Right-looking Cholesky with diagonal pivoting, stopped once the largest
// remaining diagonal falls below tol · max(diag). Returns the pivot order
// and the factor columns (rows in original numbering).
struct PivotedFactor {
  std::vector<int> order;
  Eigen::MatrixXd columns;  // M × rank
  int rank = 0;
};

PivotedFactor pivoted_cholesky(const Eigen::MatrixXd& a, double tol) {
  const int m = static_cast<int>(a.rows());
  PivotedFactor f;
  f.order.resize(m);
  std::iota(f.order.begin(), f.order.end(), 0);
  f.columns = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd d = a.diagonal();
  const double scale = d.maxCoeff();
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::MetricNotPositiveDefinite, "metric has no positive diagonal entry");
  }
  for (int k = 0; k < m; ++k) {
    int best = k;
    for (int i = k + 1; i < m; ++i) {
      if (d[f.order[i]] > d[f.order[best]]) best = i;
    }
    const double pivot = d[f.order[best]];
    if (tol == 0.0) {
      if (!(pivot > 0.0)) {
        throw Error(ErrorCode::MetricNotPositiveDefinite,
                    "Cholesky pivot " + std::to_string(k) + " is not positive");
      }
    } else if (pivot <= tol * scale) {
      break;
    }
    std::swap(f.order[k], f.order[best]);
    const int j = f.order[k];
    const double ljj = std::sqrt(pivot);
    f.columns(j, k) = ljj;
    for (int i = k + 1; i < m; ++i) {
      const int idx = f.order[i];
      double v = a(idx, j);
      for (int t = 0; t < k; ++t) v -= f.columns(idx, t) * f.columns(j, t);
      v /= ljj;
      f.columns(idx, k) = v;
      d[idx] -= v * v;
    }
    f.rank = k + 1;
  }
  for (int i = f.rank; i < m; ++i) {
    if (d[f.order[i]] < -1e-8 * scale) {
      throw Error(ErrorCode::MetricNotPositiveDefinite,
                  "metric has a negative Schur complement diagonal after " + std::to_string(f.rank) + " pivots");
    }
  }
  return f;
}

double spectral_norm(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

EigenSolution solve_generalized(const MatrixPair& pair, const SolverOptions& options) {
  const Eigen::Index m = pair.delta.rows();
  if (pair.delta.cols() != m || pair.lambda.rows() != m || pair.lambda.cols() != m) {
    throw Error(ErrorCode::InvalidArgument, "matrix pair must be square and of equal size");
  }
  const PivotedFactor f = pivoted_cholesky(pair.delta, options.rank_tolerance);
  const int r = f.rank;

  Eigen::MatrixXd lower(r, r);
  Eigen::MatrixXd reduced(r, r);
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < r; ++k) {
      lower(i, k) = f.columns(f.order[i], k);
      reduced(i, k) = pair.lambda(f.order[i], f.order[k]);
    }
  }
  const auto tri = lower.triangularView<Eigen::Lower>();
  // K = L⁻¹ Λ_JJ L⁻ᵀ
  Eigen::MatrixXd k = tri.solve(reduced);
  k = tri.solve(k.transpose()).transpose();
  k = 0.5 * (k + k.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NotConverged, "symmetric eigensolver failed");
  const Eigen::MatrixXd y = lower.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors());

  EigenSolution sol;
  sol.values = es.eigenvalues();
  sol.vectors = Eigen::MatrixXd::Zero(m, r);
  for (int i = 0; i < r; ++i) sol.vectors.row(f.order[i]) = y.row(i);
  for (int g = 0; g < r; ++g) {
    Eigen::Index imax = 0;
    sol.vectors.col(g).cwiseAbs().maxCoeff(&imax);
    if (sol.vectors(imax, g) < 0.0) sol.vectors.col(g) *= -1.0;
  }
  sol.retained.assign(f.order.begin(), f.order.begin() + r);
  std::sort(sol.retained.begin(), sol.retained.end());
  return sol;
}

EigenDiagnostics diagnose(const MatrixPair& pair, const EigenSolution& solution) {
  EigenDiagnostics out;
  const double norm = spectral_norm(pair.lambda);
  const Eigen::MatrixXd& x = solution.vectors;
  const Eigen::MatrixXd res = pair.lambda * x - pair.delta * x * solution.values.asDiagonal();
  std::vector<char> kept(pair.lambda.rows(), 0);
  for (int i : solution.retained) kept[i] = 1;
  for (Eigen::Index g = 0; g < res.cols(); ++g) {
    out.residual = std::max(out.residual, res.col(g).norm() / norm);
    double partial = 0.0;
    for (Eigen::Index i = 0; i < res.rows(); ++i) {
      if (kept[i]) partial += res(i, g) * res(i, g);
    }
    out.retained_residual = std::max(out.retained_residual, std::sqrt(partial) / norm);
  }
  const Eigen::MatrixXd gram = x.transpose() * pair.delta * x;
  out.orthonormality = (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  return out;
}

int select_mode(double previous_k_squared, const EigenSolution& solution) {
  int best = -1;
  double best_distance = 0.0;
  for (int g = 0; g < solution.size(); ++g) {
    const double value = solution.values[g];
    if (!(value > 0.0)) continue;
    const double distance = std::abs(value - previous_k_squared);
    if (best < 0 || distance < best_distance) {
      best = g;
      best_distance = distance;
    }
  }
  if (best < 0) throw Error(ErrorCode::NoPositiveEigenvalue, "no positive generalized eigenvalue to track");
  return best;
}

IterationResult iterate_mode(const Assembler& assembler, Method method, double kappa0,
                             const IterationConfig& config) {
  if (!(kappa0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa0 must be positive");
  if (!(config.tol > 0.0) || config.max_iter < 1) {
    throw Error(ErrorCode::InvalidArgument, "iteration tol must be positive and max_iter >= 1");
  }
  IterationTrace trace;
  double kappa = kappa0;
  Eigen::VectorXd previous_vector;
  EigenSolution solution;
  int chosen = -1;
  for (int iter = 0; iter < config.max_iter; ++iter) {
    const MatrixPair pair = assembler.assemble(method, kappa);
    solution = solve_generalized(pair, config.solver);
    if (config.tracking == Tracking::Overlap && previous_vector.size() > 0) {
      const Eigen::VectorXd overlaps = (solution.vectors.transpose() * (pair.delta * previous_vector)).cwiseAbs();
      chosen = -1;
      for (int g = 0; g < solution.size(); ++g) {
        if (solution.values[g] > 0.0 && (chosen < 0 || overlaps[g] > overlaps[chosen])) chosen = g;
      }
      if (chosen < 0) throw Error(ErrorCode::NoPositiveEigenvalue, "no positive generalized eigenvalue to track");
    } else {
      chosen = select_mode(kappa * kappa, solution);
    }
    previous_vector = solution.vectors.col(chosen);
    const double k_new = std::sqrt(solution.values[chosen]);
    trace.kappas.push_back(kappa);
    trace.estimates.push_back(k_new);
    trace.iterations = iter + 1;
    if (std::abs(k_new - kappa) < config.tol) {
      trace.converged = true;
      break;
    }
    kappa = k_new;
  }
  if (!trace.converged) {
    std::ostringstream msg;
    msg << "no convergence after " << trace.iterations << " iterations from kappa0 = " << kappa0 << ", last k = "
        << trace.estimates.back();
    throw NotConvergedError(msg.str(), trace);
  }

  IterationResult result;
  ModeEstimate& est = result.estimate;
  est.method = method;
  est.spec = assembler.spec();
  est.domain = assembler.domain();
  est.eigenvalue = solution.values[chosen];
  est.k_estimate = std::sqrt(est.eigenvalue);
  est.kappa = trace.kappas.back();
  est.truncation = assembler.truncation();
  est.gamma1_coeffs = solution.vectors.col(chosen);
  est.gamma2_coeffs = method == Method::DtN ? matched_value_coefficients(assembler, est.gamma1_coeffs)
                                            : matched_derivative_coefficients(assembler, est.gamma1_coeffs, est.kappa);
  result.trace = std::move(trace);
  return result;
}

}  // namespace dtnembed
