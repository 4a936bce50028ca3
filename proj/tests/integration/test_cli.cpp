#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "dtnembed/errors.hpp"
#include "dtnembed/solver.hpp"

using namespace dtnembed;
using namespace dtnembed::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

RunConfig base_config(const std::string& subdir) {
  RunConfig c;
  c.output_dir = (fs::temp_directory_path() / "dtnembed_test_cli" / subdir).string();
  fs::remove_all(c.output_dir);
  return c;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json without_timings(json doc) {
  doc.erase("timings");
  return doc;
}

// Converged wavenumber in the sweep row for (n_max, method, label).
double sweep_value(const std::string& csv, int n, const std::string& method, const std::string& label) {
  std::istringstream in(csv);
  std::string line;
  const std::string prefix = std::to_string(n) + "," + std::to_string(n) + "," + method + ",\"" + label + "\",";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return std::stod(line.substr(prefix.size()));
  }
  FAIL("row not found: " << prefix);
  return 0.0;
}

}  // namespace

TEST_CASE("config round-trip and validation") {
  const RunConfig defaults;
  const json doc = to_json(defaults);
  CHECK(to_json(parse_config(doc)) == doc);
  CHECK(to_json(parse_config(json::object())) == doc);

  json custom = doc;
  custom["method"] = "ntd";
  custom["basis"]["parity"] = "odd";
  custom["basis"]["n_max"] = 7;
  custom["sweep"]["sizes"] = json::array({json::array({2, 3})});
  custom["oracle"]["domain"] = "rectangle";
  CHECK(to_json(parse_config(custom)) == custom);

  auto rejects = [&](const char* key, json value) {
    json bad = doc;
    bad[key] = std::move(value);
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
  };
  rejects("kappa0", 0.0);
  rejects("kappa0", "two");
  rejects("method", "fem");
  rejects("max_iter", 0);
  rejects("typo", 1);
  json bad = doc;
  bad["quadrature"]["n_s"] = 511;
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  bad = doc;
  bad["field"]["mode"] = "even,3";
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  bad = doc;
  bad["basis"]["parity"] = "both";
  CHECK_THROWS_AS(parse_config(bad), ConfigError);

  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  CHECK(exit_code_for(std::make_exception_ptr(ConfigError("x"))) == kExitValidation);
  CHECK(exit_code_for(std::make_exception_ptr(ResonanceError(ErrorCode::NearDirichletResonance, 3, 2.5, "x"))) ==
        kExitResonance);
  CHECK(exit_code_for(std::make_exception_ptr(NotConvergedError("x", {}))) == kExitNotConverged);
  CHECK(exit_code_for(std::make_exception_ptr(Error(ErrorCode::IoFailure, "x"))) == kExitRuntime);
}

TEST_CASE("solve reproduces the first even and odd modes deterministically") {
  RunConfig c = base_config("solve");
  const json first = cmd_solve(c);
  CHECK(first["converged"].get<bool>());
  CHECK(std::abs(first["converged_k"].get<double>() - 2.0611) < 5e-4);
  CHECK(first["basis_size"].get<int>() == 226);
  const std::string written = slurp(fs::path(c.output_dir) / "solve.json");
  const json second = cmd_solve(c);
  CHECK(without_timings(first) == without_timings(second));
  CHECK(without_timings(json::parse(written)).dump() == without_timings(second).dump());

  c.method = Method::NtD;
  c.basis.parity = Parity::Odd;
  c.kappa0 = 3.3836;
  CHECK(std::abs(cmd_solve(c)["converged_k"].get<double>() - 3.4507) < 5e-4);

  c.max_iter = 1;
  CHECK_THROWS_AS(cmd_solve(c), NotConvergedError);
  const json failed = json::parse(slurp(fs::path(c.output_dir) / "solve.json"));
  CHECK(!failed["converged"].get<bool>());
  CHECK(failed["iterations"].size() == 1);
}

TEST_CASE("basis sweep reproduces the table layout") {
  RunConfig c = base_config("sweep");
  c.sweep_sizes = {{3, 3}, {5, 5}};
  const std::string csv = cmd_sweep_basis(c);
  CHECK(csv.rfind("n_max,m_max,method,mode_label,converged_k,status\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2 * 4);
  CHECK(std::abs(sweep_value(csv, 5, "dtn", "even,1") - 2.0611) < 1e-3);
  CHECK(std::abs(sweep_value(csv, 3, "ntd", "even,2") - 3.0809) < 1e-3);
  CHECK(csv == slurp(fs::path(c.output_dir) / "sweep.csv"));
  CHECK(csv == cmd_sweep_basis(c));

  c.sweep_sizes = {{25, 25}};
  c.sweep_methods = {Method::DtN};
  const std::string large = cmd_sweep_basis(c);
  CHECK(std::abs(sweep_value(large, 25, "dtn", "odd,2") - 4.2189) < 1e-3);

  // A forced failure is recorded per cell rather than aborting the sweep.
  c.sweep_sizes = {{3, 3}};
  c.max_iter = 1;
  const std::string failed = cmd_sweep_basis(c);
  CHECK(failed.find(",NA,NotConverged") != std::string::npos);
}

TEST_CASE("field artifacts") {
  RunConfig c = base_config("field");
  c.basis.n_max = c.basis.m_max = 25;
  c.grid = GridSpec{81, 141};
  const auto even = cmd_field(c);
  CHECK(std::abs(even.document["max_location"]["x"].get<double>()) < 1e-12);
  const double y_peak = even.document["max_location"]["y"].get<double>();
  CHECK(classify_point(make_domain(1.0, 1.5), 0.0, y_peak) != Region::Outside);
  CHECK(fs::exists(fs::path(c.output_dir) / "field_even_1.csv"));
  CHECK(fs::exists(fs::path(c.output_dir) / "field_even_1.pgm"));
  CHECK(slurp(fs::path(c.output_dir) / "field_even_1.pgm").rfind("P2\n81 141\n65535\n", 0) == 0);

  c.field_mode = "odd,1";
  c.basis.n_max = c.basis.m_max = 15;
  const auto odd = cmd_field(c);
  const int centre = (odd.grid.nx - 1) / 2;
  for (int j = 0; j < odd.grid.ny; ++j) CHECK(odd.grid.at(centre, j) < 1e-20);
  for (int j = 0; j < odd.grid.ny; ++j) {
    for (int i = 0; i < odd.grid.nx; ++i) {
      if (classify_point(make_domain(1.0, 1.5), odd.grid.x(i), odd.grid.y(j)) == Region::Outside) {
        CHECK(odd.grid.at(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("oracle on the seed rectangle") {
  RunConfig c = base_config("oracle");
  c.oracle.domain = OracleDomain::Rectangle;
  c.oracle.h = 1.0 / 64.0;
  c.oracle.num_modes = 4;
  const json doc = cmd_oracle(c);
  REQUIRE(doc["modes"].size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(doc["modes"][i]["k"].get<double>() - tracked_modes()[i].seed) < 2e-3);
  CHECK(doc["modes"][0]["symmetry"] == "even");
}

TEST_CASE("compare on defaults passes both tolerances") {
  RunConfig c = base_config("compare");
  const json doc = cmd_compare(c);
  for (const auto& m : doc["modes"]) {
    INFO(m.dump());
    CHECK(m["dtn_ntd_pass"].get<bool>());
    CHECK(m["oracle_pass"].get<bool>());
  }
  CHECK(doc["all_pass"].get<bool>());

  c.max_iter = 1;
  c.oracle.h = 1.0 / 32.0;
  CHECK(exit_code_for([&] {
          try {
            cmd_compare(c);
          } catch (...) {
            return std::current_exception();
          }
          return std::exception_ptr{};
        }()) == kExitNotConverged);
}
