#include "dtnembed/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "dtnembed/errors.hpp"

namespace dtnembed {

Eigen::VectorXd gamma2_coefficients(Method method, const Eigen::VectorXd& gamma1, double kappa,
                                    const BasisSpec& spec, const CompositeDomain& domain, int truncation,
                                    int n_s) {
  if (gamma1.size() != spec.size()) {
    throw Error(ErrorCode::InvalidArgument, "gamma1 coefficient count does not match the basis size");
  }
  const auto rule = split_interface_rule(domain, n_s);
  if (method == Method::DtN) {
    const Eigen::VectorXd samples = basis_trace_matrix(spec, domain, rule.nodes).transpose() * gamma1;
    return project_surface(samples, truncation, domain, rule);
  }
  const Eigen::VectorXd samples = basis_normal_derivative_matrix(spec, domain, rule.nodes).transpose() * gamma1;
  const Eigen::VectorXd projected = project_surface(samples, truncation, domain, rule);
  const SteklovSpectrum steklov = steklov_spectrum(kappa, truncation, domain);
  return (steklov.reciprocal().array() * projected.array()).matrix();
}

double field_value(const ModeEstimate& estimate, double x, double y) {
  const auto& domain = estimate.domain;
  switch (classify_point(domain, x, y)) {
    case Region::Semicircle:
    case Region::Interface:
      return eval_expansion(estimate.spec, estimate.gamma1_coeffs, domain, x, std::max(y, 0.0));
    case Region::Rectangle: {
      double sum = 0.0;
      for (Eigen::Index n = 0; n < estimate.gamma2_coeffs.size(); ++n) {
        sum += estimate.gamma2_coeffs[n] * steklov_mode_field(estimate.kappa, static_cast<int>(n + 1), domain, x, y);
      }
      return sum;
    }
    case Region::Outside:
      break;
  }
  return 0.0;
}

double FieldGrid::max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

FieldGrid sample_field(const ModeEstimate& estimate, const GridSpec& spec) {
  if (spec.nx < 2 || spec.ny < 2) throw Error(ErrorCode::InvalidArgument, "field grid needs at least 2 × 2 nodes");
  const auto& domain = estimate.domain;
  FieldGrid grid;
  grid.nx = spec.nx;
  grid.ny = spec.ny;
  grid.x_min = -domain.a;
  grid.x_max = domain.a;
  grid.y_min = -domain.b;
  grid.y_max = domain.a;
  grid.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);

  // The Steklov expansion separates: Σ c_n ψ_n(x) Y_n(y).
  const int truncation = static_cast<int>(estimate.gamma2_coeffs.size());
  Eigen::MatrixXd traces(truncation, grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    for (int n = 1; n <= truncation; ++n) traces(n - 1, i) = steklov_trace(n, domain, grid.x(i));
  }

  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.y(j);
    Eigen::VectorXd profile;
    const bool rectangle_row = y < -kInterfaceTolerance && y > -domain.b;
    if (rectangle_row) {
      profile.resize(truncation);
      for (int n = 1; n <= truncation; ++n) profile[n - 1] = steklov_profile(estimate.kappa, n, domain, y);
      profile = (profile.array() * estimate.gamma2_coeffs.array()).matrix();
    }
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const Region region = classify_point(domain, x, y);
      double value = 0.0;
      if (region == Region::Rectangle) {
        value = profile.dot(traces.col(i));
      } else if (region != Region::Outside) {
        value = eval_expansion(estimate.spec, estimate.gamma1_coeffs, domain, x, std::max(y, 0.0));
      }
      grid.values[static_cast<std::size_t>(j) * grid.nx + i] = value * value;
    }
  }

  double total = 0.0;
  for (double v : grid.values) total += v;
  total *= grid.dx() * grid.dy();
  if (total > 0.0) {
    for (double& v : grid.values) v /= total;
  }
  return grid;
}

void export_grid(const FieldGrid& grid, GridFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  char buf[96];
  if (format == GridFormat::Csv) {
    out << "x,y,value\n";
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", grid.x(i), grid.y(j), grid.at(i, j));
        out << buf;
      }
    }
  } else {
    const double peak = grid.max();
    out << "P2\n" << grid.nx << ' ' << grid.ny << "\n65535\n";
    for (int j = grid.ny - 1; j >= 0; --j) {
      for (int i = 0; i < grid.nx; ++i) {
        const long level = peak > 0.0 ? std::lround(65535.0 * grid.at(i, j) / peak) : 0;
        out << std::clamp(level, 0L, 65535L) << (i + 1 < grid.nx ? ' ' : '\n');
      }
    }
  }
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write to " + path + " failed");
}

}  // namespace dtnembed
