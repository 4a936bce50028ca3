#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "dtnembed/assembly.hpp"
#include "dtnembed/mode_estimate.hpp"

namespace dtnembed {

/// Steklov coefficients of the Γ_II field from the Γ_I coefficients:
///   DtN: c_n = (ψ_n | Ψ_I),  NtD: c_n = (ψ_n | ∇⊥Ψ_I) / b_n,
/// projected with the split interface rule of `n_s` nodes.
/// Throws NearNeumannResonance on the NtD path.
Eigen::VectorXd gamma2_coefficients(Method method, const Eigen::VectorXd& gamma1, double kappa,
                                    const BasisSpec& spec, const CompositeDomain& domain,
                                    int truncation = kDefaultSteklovTruncation, int n_s = QuadratureConfig{}.n_s);

/// Value of the composite field at (x, y): the Γ_I expansion on the closed
/// semicircle (interface points included), the Steklov expansion in the
/// open rectangle, 0 outside.
double field_value(const ModeEstimate& estimate, double x, double y);

struct GridSpec {
  int nx = 401;
  int ny = 701;
};

/// Node grid covering [-a, a] × [-b, a]. values[j·nx + i] is |Ψ|² at
/// (x(i), y(j)), with x ascending in i and y ascending in j. The nodes are
/// placed symmetrically about x = 0.
struct FieldGrid {
  int nx = 0;
  int ny = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  std::vector<double> values;

  double dx() const noexcept { return (x_max - x_min) / (nx - 1); }
  double dy() const noexcept { return (y_max - y_min) / (ny - 1); }
  double x(int i) const noexcept { return 0.5 * (x_min + x_max) + (i - 0.5 * (nx - 1)) * dx(); }
  double y(int j) const noexcept { return y_min + j * dy(); }
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
  double max() const;
};

/// Samples |Ψ|² and normalizes so that Σ values · dx · dy = 1.
FieldGrid sample_field(const ModeEstimate& estimate, const GridSpec& grid = {});

enum class GridFormat { Csv, Pgm };

/// CSV: header "x,y,value", one row per node, 9 significant digits, LF.
/// PGM: plain P2, maxval 65535, values scaled linearly by the grid maximum,
/// top raster row at the largest y. Throws IoFailure.
void export_grid(const FieldGrid& grid, GridFormat format, const std::string& path);

}  // namespace dtnembed
