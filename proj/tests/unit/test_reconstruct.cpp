#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "dtnembed/errors.hpp"
#include "dtnembed/reconstruct.hpp"
#include "dtnembed/solver.hpp"

using namespace dtnembed;
namespace fs = std::filesystem;

namespace {
const CompositeDomain kDomain = make_domain(1.0, 1.5);

ModeEstimate converge(Parity parity, Method method, int size, double seed) {
  const Assembler assembler(BasisSpec{parity, 1.0, 1.0, size, size}, kDomain);
  return iterate_mode(assembler, method, seed).estimate;
}

// L² norm on S of the jump in value between the two expansions.
double value_mismatch(const ModeEstimate& est) {
  const auto rule = split_interface_rule(kDomain, 1024);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double x = rule.nodes[q];
    double inner = 0.0;
    for (int mu = 0; mu < est.spec.size(); ++mu) inner += est.gamma1_coeffs[mu] * basis_trace(est.spec, mu, kDomain, x);
    double outer = 0.0;
    for (int n = 1; n <= est.gamma2_coeffs.size(); ++n) outer += est.gamma2_coeffs[n - 1] * steklov_trace(n, kDomain, x);
    sum += rule.weights[q] * (inner - outer) * (inner - outer);
  }
  return std::sqrt(sum);
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "dtnembed_test_reconstruct";
  fs::create_directories(dir);
  return dir;
}
}  // namespace

TEST_CASE("gamma2 coefficients from a known trace") {
  const BasisSpec spec{Parity::Even, 1.0, 1.0, 3, 3};
  Eigen::VectorXd linear = Eigen::VectorXd::Zero(spec.size());
  linear[0] = 1.0;
  // The trace |x| - 1 projects to (-1)^((n-1)/2) · (-8/(nπ)²) for odd n, 0 for even n.
  const auto c = gamma2_coefficients(Method::DtN, linear, 2.0611, spec, kDomain, 40);
  for (int n = 1; n <= 40; ++n) {
    const double expected = n % 2 == 0 ? 0.0 : ((n / 2) % 2 == 0 ? -1.0 : 1.0) * 8.0 / std::pow(n * std::numbers::pi, 2);
    CHECK(std::abs(c[n - 1] - expected) < 1e-12);
  }
  // Its normal derivative vanishes, so the NtD coefficients do too.
  CHECK(gamma2_coefficients(Method::NtD, linear, 2.0611, spec, kDomain, 40).cwiseAbs().maxCoeff() < 1e-14);

  Eigen::VectorXd zero_trace = Eigen::VectorXd::Zero(spec.size());
  for (int mu = 1; mu < spec.size(); ++mu) zero_trace[mu] = spec.term(mu).m % 2 == 1 ? 0.3 * mu : 0.0;
  CHECK(gamma2_coefficients(Method::DtN, zero_trace, 2.0611, spec, kDomain).cwiseAbs().maxCoeff() < 1e-15);

  const double nu = std::numbers::pi / 3.0;
  const double zero = std::sqrt(nu * nu + std::pow(std::numbers::pi / 2.0, 2));
  Eigen::VectorXd any = Eigen::VectorXd::Ones(spec.size());
  try {
    gamma2_coefficients(Method::NtD, any, zero, spec, kDomain, 10);
    FAIL("expected NearNeumannResonance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NearNeumannResonance);
  }
}

TEST_CASE("interface value mismatch of the NtD field shrinks with the basis") {
  const double small = value_mismatch(converge(Parity::Even, Method::NtD, 5, 2.0116));
  const double large = value_mismatch(converge(Parity::Even, Method::NtD, 15, 2.0116));
  INFO("mismatch 5x5 ", small, " 15x15 ", large);
  CHECK(large < small);
}

TEST_CASE("field values and parity") {
  const auto even = converge(Parity::Even, Method::DtN, 5, 2.0116);
  const auto odd = converge(Parity::Odd, Method::NtD, 5, 3.3836);
  CHECK(field_value(even, 0.9, 0.9) == 0.0);
  CHECK(field_value(even, 0.0, -1.5) == 0.0);
  CHECK(field_value(odd, 1.0, -0.5) == 0.0);
  for (double y : {0.5, 0.0, -0.7}) CHECK(std::abs(field_value(odd, 0.0, y)) < 1e-12);
  for (auto [x, y] : {std::pair{0.3, 0.4}, std::pair{0.6, -0.2}, std::pair{0.25, 0.0}}) {
    CHECK(std::abs(field_value(even, x, y) - field_value(even, -x, y)) < 1e-12);
    CHECK(std::abs(field_value(odd, x, y) + field_value(odd, -x, y)) < 1e-12);
  }
  // Dirichlet walls: the field fades approaching ∂Γ.
  const double centre = std::abs(field_value(even, 0.0, 0.0));
  CHECK(std::abs(field_value(even, 0.0, 0.999)) < 1e-2 * centre);
  CHECK(std::abs(field_value(even, 0.999, -0.5)) < 1e-2 * centre);
  CHECK(std::abs(field_value(even, 0.2, -1.499)) < 1e-2 * centre);

  for (const ModeEstimate* est : {&even, &odd}) {
    const auto grid = sample_field(*est, GridSpec{41, 71});
    double total = 0.0;
    double asym = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const double v = grid.at(i, j);
        CHECK(v >= 0.0);
        total += v;
        asym = std::max(asym, std::abs(v - grid.at(grid.nx - 1 - i, j)));
        if (classify_point(kDomain, grid.x(i), grid.y(j)) == Region::Outside) CHECK(v == 0.0);
      }
    }
    CHECK(std::abs(total * grid.dx() * grid.dy() - 1.0) < 1e-12);
    CHECK(asym < 1e-10);
    CHECK(grid.x((grid.nx - 1) / 2) == 0.0);
    if (est->parity() == Parity::Odd) {
      for (int j = 0; j < grid.ny; ++j) CHECK(grid.at((grid.nx - 1) / 2, j) < 1e-20);
    }
  }
}

TEST_CASE("CSV export round-trips") {
  const auto grid = sample_field(converge(Parity::Even, Method::DtN, 3, 2.0116), GridSpec{21, 31});
  const fs::path path = scratch_dir() / "field.csv";
  export_grid(grid, GridFormat::Csv, path.string());
  std::ifstream in(path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "x,y,value");
  std::size_t rows = 0;
  double worst = 0.0;
  while (std::getline(in, line)) {
    CHECK(line.find('\r') == std::string::npos);
    std::istringstream row(line);
    std::string xs, ys, vs;
    std::getline(row, xs, ',');
    std::getline(row, ys, ',');
    std::getline(row, vs, ',');
    const int i = static_cast<int>(rows % grid.nx);
    const int j = static_cast<int>(rows / grid.nx);
    CHECK(std::abs(std::stod(xs) - grid.x(i)) < 1e-8);
    CHECK(std::abs(std::stod(ys) - grid.y(j)) < 1e-8);
    const double v = grid.at(i, j);
    worst = std::max(worst, std::abs(std::stod(vs) - v) / std::max(v, 1e-300));
    ++rows;
  }
  CHECK(rows == grid.values.size());
  CHECK(worst < 1e-8);
}

TEST_CASE("PGM export") {
  const fs::path dir = scratch_dir();
  FieldGrid zeros;
  zeros.nx = 2;
  zeros.ny = 2;
  zeros.x_min = -1.0;
  zeros.x_max = 1.0;
  zeros.y_min = -1.5;
  zeros.y_max = 1.0;
  zeros.values.assign(4, 0.0);
  export_grid(zeros, GridFormat::Pgm, (dir / "zeros.pgm").string());
  {
    std::ifstream in(dir / "zeros.pgm");
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    CHECK(magic == "P2");
    CHECK(w == 2);
    CHECK(h == 2);
    CHECK(maxval == 65535);
    int v = -1, count = 0;
    while (in >> v) {
      CHECK(v == 0);
      ++count;
    }
    CHECK(count == 4);
  }

  FieldGrid ramp = zeros;
  ramp.nx = 3;
  ramp.values = {0.0, 1.0, 2.0, 3.0, 4.0, 8.0};
  export_grid(ramp, GridFormat::Pgm, (dir / "ramp.pgm").string());
  std::ifstream in(dir / "ramp.pgm");
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  std::vector<int> raster;
  for (int v; in >> v;) raster.push_back(v);
  REQUIRE(raster.size() == 6);
  // Top row is the largest y.
  CHECK(raster[2] == 65535);
  CHECK(raster[0] == static_cast<int>(std::lround(65535.0 * 3.0 / 8.0)));
  CHECK(raster[3] == 0);

  try {
    export_grid(ramp, GridFormat::Csv, (dir / "missing" / "deeper" / "x.csv").string());
    FAIL("expected IoFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoFailure);
  }
}
