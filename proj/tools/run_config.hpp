#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtnembed/assembly.hpp"
#include "dtnembed/reconstruct.hpp"

namespace dtnembed::cli {

/// Raised for malformed or out-of-range configuration (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OracleDomain { Composite, Rectangle };

struct OracleConfig {
  OracleDomain domain = OracleDomain::Composite;
  double width = 2.0;    // rectangle only
  double height = 2.5;   // rectangle only
  double h = 1.0 / 128.0;
  bool richardson = true;  // also solve at h/2 and extrapolate
  int num_modes = 6;
};

struct RunConfig {
  double a = 1.0;
  double b = 1.5;
  BasisSpec basis{Parity::Even, 1.0, 1.0, 15, 15};
  Method method = Method::DtN;
  int steklov_truncation = kDefaultSteklovTruncation;
  QuadratureConfig quadrature{};
  double kappa0 = 2.0116;
  double tol = 5e-5;
  int max_iter = 20;
  GridSpec grid{};
  std::vector<std::array<int, 2>> sweep_sizes{{3, 3}, {5, 5}, {15, 15}, {25, 25}};
  std::vector<Method> sweep_methods{Method::DtN, Method::NtD};
  std::string field_mode = "even,1";
  OracleConfig oracle{};
  std::string output_dir = ".";
};

/// Missing keys take the defaults above; unknown keys and invalid values
/// throw ConfigError.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

/// Throws ConfigError unless every numeric field is in range.
void validate(const RunConfig& config);

}  // namespace dtnembed::cli
