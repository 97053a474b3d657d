#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entgen/strategies.hpp"

#include "json.hpp"

namespace entgen::verify {

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

enum class StrategyKind { random_compliant, usd, trivial };

// Monte Carlo configuration. Substreams are derived per trial from (seed,
// trial index), so reports are reproducible and trials order-independent.
struct TrialConfig {
  std::int64_t n_trials = 10000;
  std::uint64_t seed = 42;
  Range q0{0.02, 0.98};
  Range alpha{0.05, 3.0};      // pulse amplitude modulus
  Range theta{0.02, 1.55};     // phase-rotation half-angle
  Range transmittance{0.05, 0.95};
  int max_outcomes = 3;
  StrategyKind strategy = StrategyKind::random_compliant;
  int n_cross_checks = 8;      // Fock-oracle cross validations spread over the run
  int cross_check_cutoff = 0;  // 0 = derived from the drawn amplitudes
  double inequality_tol = 1e-9;
  double cross_check_tol = 1e-8;

  void validate() const;
};

struct InequalityStat {
  std::string name;
  std::int64_t passes = 0;
  std::int64_t applicable = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::int64_t worst_trial = -1;
};

struct FailureDump {
  std::int64_t trial = -1;
  std::string inequality;
  double margin = 0.0;
  protocol::ProtocolParams params;
  int n_outcomes = 0;
};

struct VerificationReport {
  std::int64_t trials = 0;
  std::vector<InequalityStat> inequalities;
  double cross_check_max = 0.0;
  std::uint64_t seed = 0;
  std::vector<FailureDump> failures;

  bool all_passed() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

// Samples protocols and strategies, evaluates them, and asserts every bound
// inequality on each trial. Violations are recorded, never thrown; the report
// is bit-identical for identical (config, seed).
VerificationReport run_monte_carlo(const TrialConfig& config);

// Evaluates outcome probabilities and fidelities both in the coherent
// component representation and by full truncated-Fock simulation of the lossy
// channel; returns the largest absolute deviation.
double cross_validate_representations(const protocol::ProtocolParams& params,
                                      const strategies::MeasurementStrategy& strategy,
                                      const fock::TruncationPolicy& policy);

// Reconstructs the optimal curve from the symmetric family: upper convex hull
// of sampled (Ps, Ps f_sym) against Ps f_opt. Returns the max deviation over
// the grid.
double hull_check(double transmittance, int grid_size);

}  // namespace entgen::verify
