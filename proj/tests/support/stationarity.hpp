#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dtnembed/assembly.hpp"
#include "dtnembed/solver.hpp"

namespace testsupport {

struct StationarityProbe {
  double functional_value = 0.0;  // F at the converged trial
  double eigenvalue = 0.0;        // F̃ from the solver
  double order = 0.0;             // fitted exponent of |F(ε) - F(0)| against ε
  std::vector<double> changes;
};

// Converges one mode tightly, builds the trial the method implies (matched
// values for DtN at mixing 0, matched normal derivatives for NtD at mixing
// 1), then perturbs both coefficient vectors along a fixed random direction.
inline StationarityProbe probe_stationarity(const dtnembed::Assembler& assembler, dtnembed::Method method,
                                            double seed, std::uint64_t rng_seed = 7) {
  using namespace dtnembed;
  IterationConfig cfg;
  cfg.tol = 1e-9;
  cfg.max_iter = 60;
  const auto run = iterate_mode(assembler, method, seed, cfg);
  const ModeEstimate& est = run.estimate;

  TrialPair trial{est.gamma1_coeffs, est.gamma2_coeffs, est.kappa};
  const std::complex<double> mixing = method == Method::DtN ? 0.0 : 1.0;

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd da(trial.gamma1_coeffs.size());
  Eigen::VectorXd dc(trial.gamma2_coeffs.size());
  for (auto& v : da) v = normal(rng);
  for (auto& v : dc) v = normal(rng);
  // Scale so that ε measures the size of the perturbed function relative to
  // the trial: ⟨δΨ|δΨ⟩ = ⟨Ψ|Ψ⟩ over both subdomains.
  const auto steklov = steklov_spectrum(trial.kappa, assembler.truncation(), assembler.domain());
  const Eigen::VectorXd mode_norm = steklov.db / (2.0 * trial.kappa);
  auto norm2 = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& c) {
    return a.dot(assembler.gram() * a) + (c.array().square() * mode_norm.array()).sum();
  };
  const double scale = std::sqrt(norm2(trial.gamma1_coeffs, trial.gamma2_coeffs) / norm2(da, dc));
  da *= scale;
  dc *= scale;

  StationarityProbe probe;
  probe.eigenvalue = est.eigenvalue;
  probe.functional_value = evaluate_discontinuous_functional(assembler, trial, mixing).real();
  const double eps[] = {1e-2, 1e-3, 1e-4};
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double e : eps) {
    TrialPair moved = trial;
    moved.gamma1_coeffs += e * da;
    moved.gamma2_coeffs += e * dc;
    const double change = std::abs(evaluate_discontinuous_functional(assembler, moved, mixing).real() -
                                   probe.functional_value);
    probe.changes.push_back(change);
    const double x = std::log(e);
    const double y = std::log(std::max(change, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = 3.0;
  probe.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return probe;
}

}  // namespace testsupport
