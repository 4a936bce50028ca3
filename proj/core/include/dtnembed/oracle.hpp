#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dtnembed/geometry.hpp"

namespace dtnembed {

/// Uniform grid over a bounding box; mask marks the unknowns (nodes strictly
/// inside the domain). Nodes off the mask carry the Dirichlet value 0.
/// Node (i, j) sits at (x0 + i·h, y0 + j·h), i in [0, nx), j in [0, ny).
struct FdmProblem {
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  std::vector<std::uint8_t> mask;  // mask[j·nx + i]

  double x(int i) const noexcept { return x0 + i * h; }
  double y(int j) const noexcept { return y0 + j * h; }
  bool inside(int i, int j) const noexcept { return mask[static_cast<std::size_t>(j) * nx + i] != 0; }
  std::size_t unknowns() const;
};

/// Stair-step mask of the composite domain, bounding box [-a, a] × [-b, a].
/// Throws GridTooCoarse unless min(a, b)/h ≥ 10; InvalidArgument unless h
/// divides 2a and a + b.
FdmProblem make_composite_problem(const CompositeDomain& domain, double h);

/// Rectangle (-w/2, w/2) × (-d/2, d/2). Same checks as above.
FdmProblem make_rectangle_problem(double width, double height, double h);

enum class Symmetry { Even, Odd, Mixed };

std::string_view to_string(Symmetry symmetry) noexcept;

struct FdmMode {
  double k = 0.0;              // √λ of -Δ_h
  std::vector<double> field;   // nx·ny nodal values, unit Euclidean norm, 0 off the mask
  Symmetry symmetry = Symmetry::Mixed;  // under x → -x
};

enum class FdmLinearSolver { SparseCholesky, ConjugateGradient };

struct FdmOptions {
  FdmLinearSolver linear_solver = FdmLinearSolver::SparseCholesky;
  int extra_block = 3;        // block size is num_modes + extra_block
  double residual_tol = 1e-9; // ‖Ax - θx‖ ≤ tol · θ to lock a Ritz pair
  double cg_tol = 1e-10;      // relative residual of each inner solve
  int max_outer = 400;
  std::uint64_t seed = 12345;
};

/// Smallest num_modes eigenpairs of the 5-point Dirichlet Laplacian by
/// block inverse iteration with Rayleigh-Ritz and locking of converged
/// pairs (later blocks are kept orthogonal to them). Ascending in k.
/// Throws IterationStalled.
std::vector<FdmMode> fdm_eigen(const FdmProblem& problem, int num_modes, const FdmOptions& options = {});

/// Parity of a nodal field under x → -x, for grids symmetric about x = 0.
Symmetry classify_symmetry(const FdmProblem& problem, const std::vector<double>& field, double tol = 1e-6);

/// O(h²) Richardson combination of the values at spacing h and h/2.
double richardson(double coarse, double fine) noexcept;

}  // namespace dtnembed
