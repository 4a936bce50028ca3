#pragma once

#include <array>
#include <exception>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dtnembed/oracle.hpp"
#include "dtnembed/reconstruct.hpp"
#include "run_config.hpp"

namespace dtnembed::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNotConverged = 2,
  kExitResonance = 3,
  kExitCompareFailed = 4,
  kExitRuntime = 5,
};

/// The four tracked modes and the rectangle eigenvalues used as seeds.
struct TrackedMode {
  std::string_view label;
  Parity parity;
  int index;  // 1-based within its parity class
  double seed;
};
const std::array<TrackedMode, 4>& tracked_modes();
const TrackedMode& find_tracked_mode(std::string_view label);

inline constexpr double kMethodTolerance = 1e-4;
inline constexpr double kOracleTolerance = 1e-2;

// Each command computes its document, writes it under config.output_dir and
// returns it. Library errors propagate; map them with exit_code_for.

/// solve.json: method, parity, kappa0, iterations, converged_k, basis_size, timings.
/// On NotConverged the document (converged = false) is written before rethrowing.
nlohmann::json cmd_solve(const RunConfig& config);

/// sweep.csv: n_max,m_max,method,mode_label,converged_k,status. Failed
/// cells hold NA and the error class in status.
std::string cmd_sweep_basis(const RunConfig& config);

struct FieldResult {
  ModeEstimate estimate;
  FieldGrid grid;
  nlohmann::json document;
};
/// field_<parity>_<index>.{csv,pgm,json} for config.field_mode.
FieldResult cmd_field(const RunConfig& config);

/// oracle.json: FDM wavenumbers (Richardson-extrapolated when enabled) and parities.
nlohmann::json cmd_oracle(const RunConfig& config);

/// compare.json: DtN, NtD and FDM wavenumbers per tracked mode with pass flags.
nlohmann::json cmd_compare(const RunConfig& config);

/// Exit code for an exception escaping a command; prints a diagnostic to stderr.
int exit_code_for(std::exception_ptr error);

/// Full command-line entry point (CLI11 parsing plus dispatch).
int run(int argc, char** argv);

}  // namespace dtnembed::cli
