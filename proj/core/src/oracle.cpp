#include "dtnembed/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <random>
#include <string>

#include "dtnembed/errors.hpp"

namespace dtnembed {

std::string_view to_string(Symmetry symmetry) noexcept {
  switch (symmetry) {
    case Symmetry::Even: return "even";
    case Symmetry::Odd: return "odd";
    case Symmetry::Mixed: break;
  }
  return "mixed";
}

std::size_t FdmProblem::unknowns() const {
  std::size_t n = 0;
  for (auto m : mask) n += m;
  return n;
}

namespace {

int steps(double length, double h) {
  const double q = length / h;
  const long r = std::lround(q);
  if (std::abs(q - static_cast<double>(r)) > 1e-9 * q) {
    throw Error(ErrorCode::InvalidArgument, "grid spacing h = " + std::to_string(h) + " does not divide " +
                                                std::to_string(length));
  }
  return static_cast<int>(r);
}

void check_resolution(double shortest, double h) {
  if (!(h > 0.0) || shortest / h < 10.0 - 1e-9) {
    throw Error(ErrorCode::GridTooCoarse,
                "h = " + std::to_string(h) + " puts fewer than 10 points across " + std::to_string(shortest));
  }
}

template <class Inside>
FdmProblem build(double x0, double y0, int nx, int ny, double h, Inside inside) {
  FdmProblem p;
  p.h = h;
  p.nx = nx;
  p.ny = ny;
  p.x0 = x0;
  p.y0 = y0;
  p.mask.assign(static_cast<std::size_t>(nx) * ny, 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) p.mask[static_cast<std::size_t>(j) * nx + i] = inside(p.x(i), p.y(j)) ? 1 : 0;
  }
  return p;
}

using SpMat = Eigen::SparseMatrix<double>;

struct Indexing {
  std::vector<int> unknown_of_node;  // -1 off the mask
  std::vector<int> node_of_unknown;
};

Indexing index_unknowns(const FdmProblem& p) {
  Indexing ix;
  ix.unknown_of_node.assign(p.mask.size(), -1);
  for (std::size_t k = 0; k < p.mask.size(); ++k) {
    if (p.mask[k]) {
      ix.unknown_of_node[k] = static_cast<int>(ix.node_of_unknown.size());
      ix.node_of_unknown.push_back(static_cast<int>(k));
    }
  }
  return ix;
}

SpMat laplacian(const FdmProblem& p, const Indexing& ix) {
  const int n = static_cast<int>(ix.node_of_unknown.size());
  const double inv_h2 = 1.0 / (p.h * p.h);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(n) * 5);
  for (int u = 0; u < n; ++u) {
    const int node = ix.node_of_unknown[u];
    const int i = node % p.nx;
    const int j = node / p.nx;
    entries.emplace_back(u, u, 4.0 * inv_h2);
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int s = 0; s < 4; ++s) {
      const int ii = i + di[s];
      const int jj = j + dj[s];
      if (ii < 0 || jj < 0 || ii >= p.nx || jj >= p.ny) continue;
      const int v = ix.unknown_of_node[static_cast<std::size_t>(jj) * p.nx + ii];
      if (v >= 0) entries.emplace_back(u, v, -inv_h2);
    }
  }
  SpMat a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  return a;
}

// Applies A⁻¹ column by column; the CG variant warm-starts from `guess`.
class InverseOperator {
 public:
  InverseOperator(const SpMat& a, const FdmOptions& options) : options_(options) {
    if (options.linear_solver == FdmLinearSolver::SparseCholesky) {
      direct_.compute(a);
      if (direct_.info() != Eigen::Success) throw Error(ErrorCode::IterationStalled, "sparse Cholesky factorization failed");
    } else {
      cg_.setTolerance(options.cg_tol);
      cg_.setMaxIterations(static_cast<Eigen::Index>(20 * std::sqrt(static_cast<double>(a.rows())) + 1000));
      cg_.compute(a);
      if (cg_.info() != Eigen::Success) throw Error(ErrorCode::IterationStalled, "preconditioner setup failed");
    }
  }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& rhs, const Eigen::MatrixXd& guess) {
    if (options_.linear_solver == FdmLinearSolver::SparseCholesky) return direct_.solve(rhs);
    Eigen::MatrixXd out(rhs.rows(), rhs.cols());
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
      out.col(c) = cg_.solveWithGuess(rhs.col(c), guess.col(c));
      if (cg_.info() != Eigen::Success) {
        throw Error(ErrorCode::IterationStalled, "conjugate gradient did not reach the requested tolerance");
      }
    }
    return out;
  }

 private:
  FdmOptions options_;
  Eigen::SimplicialLDLT<SpMat> direct_;
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper, Eigen::IncompleteCholesky<double>> cg_;
};

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace

FdmProblem make_composite_problem(const CompositeDomain& domain, double h) {
  check_resolution(std::min(domain.a, domain.b), h);
  const int sx = steps(2.0 * domain.a, h);
  const int sy = steps(domain.a + domain.b, h);
  const double a = domain.a;
  const double b = domain.b;
  return build(-a, -b, sx + 1, sy + 1, h, [a, b](double x, double y) {
    if (y < 0.0) return y > -b && std::abs(x) < a;
    return x * x + y * y < a * a;
  });
}

FdmProblem make_rectangle_problem(double width, double height, double h) {
  if (!(width > 0.0) || !(height > 0.0)) throw Error(ErrorCode::NonPositiveGeometry, "rectangle sides must be positive");
  check_resolution(std::min(width, height), h);
  const int sx = steps(width, h);
  const int sy = steps(height, h);
  return build(-0.5 * width, -0.5 * height, sx + 1, sy + 1, h, [sx, sy, h, width, height](double x, double y) {
    const double tx = (x + 0.5 * width) / h;
    const double ty = (y + 0.5 * height) / h;
    return tx > 0.5 && tx < sx - 0.5 && ty > 0.5 && ty < sy - 0.5;
  });
}

std::vector<FdmMode> fdm_eigen(const FdmProblem& problem, int num_modes, const FdmOptions& options) {
  if (num_modes < 1) throw Error(ErrorCode::InvalidArgument, "num_modes must be >= 1");
  const Indexing ix = index_unknowns(problem);
  const int n = static_cast<int>(ix.node_of_unknown.size());
  const int block = std::min(n, num_modes + std::max(0, options.extra_block));
  if (num_modes > n) throw Error(ErrorCode::InvalidArgument, "more modes requested than grid unknowns");
  const SpMat a = laplacian(problem, ix);
  InverseOperator inverse(a, options);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd x(n, block);
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) x(r, c) = normal(rng);
  }
  x = orthonormalize(x);
  Eigen::VectorXd theta = Eigen::VectorXd::Ones(block);

  Eigen::MatrixXd locked(n, 0);
  std::vector<double> locked_values;
  int outer = 0;
  while (static_cast<int>(locked_values.size()) < num_modes) {
    if (++outer > options.max_outer) {
      throw Error(ErrorCode::IterationStalled, "block inverse iteration made no progress after " +
                                                   std::to_string(options.max_outer) + " sweeps");
    }
    const Eigen::MatrixXd guess = x * theta.cwiseInverse().asDiagonal();
    Eigen::MatrixXd y = inverse.apply(x, guess);
    if (locked.cols() > 0) y -= locked * (locked.transpose() * y);
    y = orthonormalize(y);
    if (locked.cols() > 0) {
      y -= locked * (locked.transpose() * y);
      y = orthonormalize(y);
    }
    const Eigen::MatrixXd ay = a * y;
    Eigen::MatrixXd h = y.transpose() * ay;
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    theta = es.eigenvalues();
    x = y * es.eigenvectors();
    const Eigen::MatrixXd ax = ay * es.eigenvectors();

    // Lock the leading run of converged Ritz pairs.
    int take = 0;
    while (take < x.cols() && static_cast<int>(locked_values.size()) + take < num_modes) {
      const double res = (ax.col(take) - theta[take] * x.col(take)).norm();
      if (res > options.residual_tol * std::abs(theta[take])) break;
      ++take;
    }
    if (take > 0) {
      Eigen::MatrixXd grown(n, locked.cols() + take);
      grown << locked, x.leftCols(take);
      locked = std::move(grown);
      for (int t = 0; t < take; ++t) locked_values.push_back(theta[t]);
      // Refill the block with fresh directions to keep its size.
      Eigen::MatrixXd refill(n, take);
      for (Eigen::Index c = 0; c < refill.cols(); ++c) {
        for (Eigen::Index r = 0; r < refill.rows(); ++r) refill(r, c) = normal(rng);
      }
      Eigen::MatrixXd next(n, x.cols());
      next << x.rightCols(x.cols() - take), refill;
      next -= locked * (locked.transpose() * next);
      x = orthonormalize(next);
      Eigen::VectorXd next_theta(x.cols());
      next_theta << theta.tail(theta.size() - take), Eigen::VectorXd::Constant(take, theta[theta.size() - 1]);
      theta = next_theta;
    }
  }

  std::vector<FdmMode> modes;
  modes.reserve(num_modes);
  for (int m = 0; m < num_modes; ++m) {
    FdmMode mode;
    mode.k = std::sqrt(locked_values[m]);
    mode.field.assign(problem.mask.size(), 0.0);
    // Fix the sign by the largest-magnitude component.
    Eigen::Index imax = 0;
    locked.col(m).cwiseAbs().maxCoeff(&imax);
    const double sign = locked(imax, m) < 0.0 ? -1.0 : 1.0;
    for (int u = 0; u < n; ++u) mode.field[ix.node_of_unknown[u]] = sign * locked(u, m);
    mode.symmetry = classify_symmetry(problem, mode.field);
    modes.push_back(std::move(mode));
  }
  return modes;
}

Symmetry classify_symmetry(const FdmProblem& problem, const std::vector<double>& field, double tol) {
  double even = 0.0;
  double odd = 0.0;
  double scale = 0.0;
  for (int j = 0; j < problem.ny; ++j) {
    for (int i = 0; i < problem.nx; ++i) {
      const double v = field[static_cast<std::size_t>(j) * problem.nx + i];
      const double w = field[static_cast<std::size_t>(j) * problem.nx + (problem.nx - 1 - i)];
      even = std::max(even, std::abs(v - w));
      odd = std::max(odd, std::abs(v + w));
      scale = std::max(scale, std::abs(v));
    }
  }
  if (scale == 0.0) return Symmetry::Mixed;
  if (even <= tol * scale) return Symmetry::Even;
  if (odd <= tol * scale) return Symmetry::Odd;
  return Symmetry::Mixed;
}

double richardson(double coarse, double fine) noexcept { return (4.0 * fine - coarse) / 3.0; }

}  // namespace dtnembed
