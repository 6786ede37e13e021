#ifndef TAILCR_MONTECARLO_HPP
#define TAILCR_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tailcr/estimators.hpp"
#include "tailcr/sampling.hpp"

namespace tailcr {

/// One Monte Carlo design point. `censoring` may be absent, in which case
/// every lifetime is observed uncensored.
struct ScenarioConfig {
  std::string name = "custom";
  std::vector<SubDistributionSpec> specs;
  std::optional<CensoringSpec> censoring;
  std::size_t n = 0;
  std::size_t n_rep = 0;
  std::vector<std::size_t> kn_grid;
  std::vector<EstimatorId> estimators;
  int target_cause = 1;
  std::uint64_t master_seed = 0;

  /// True index being estimated: the target cause's gamma.
  double gamma_true() const;

  /// Throws errc::invalid_config on any violated invariant
  /// (kn_grid inside [1, n-1], n_rep >= 1, valid specs, ...).
  void validate() const;
};

/// Aggregates for one (k_n, estimator) cell. Cells where every replication
/// failed (no qualifying exceedance) report absent aggregates; failures are
/// counted, never imputed.
struct ReportRow {
  std::size_t kn = 0;
  EstimatorId estimator = EstimatorId::aj;
  std::optional<double> median_bias;
  std::optional<double> mse;
  std::optional<double> mean_estimate;
  std::optional<double> sd_estimate;
  std::size_t failure_count = 0;
};

struct MonteCarloReport {
  std::vector<ReportRow> rows;  ///< kn ascending per config order, estimators in config order
};

/// Report plus the raw per-replication estimates, for callers that want to
/// recompute or extend the aggregation. estimates[r][cell] is replication
/// r's estimate for cell = kn_index * #estimators + estimator_index; failed
/// cells hold NaN.
struct ScenarioRun {
  MonteCarloReport report;
  std::vector<std::vector<double>> estimates;
};

/// Runs the scenario: replication r draws its data from the stream
/// (master_seed, r), evaluates every configured estimator on every k_n, and
/// the aggregation pass computes median bias = median(gamma_hat - gamma_true)
/// and MSE = mean((gamma_hat - gamma_true)^2) over successful replications.
/// Replications run on `workers` threads; results are keyed by replication
/// index, so the output is bitwise independent of scheduling.
MonteCarloReport run_scenario(const ScenarioConfig& config, unsigned workers = 1);
ScenarioRun run_scenario_detailed(const ScenarioConfig& config, unsigned workers = 1);

/// The 24 designs of the reference simulation study: {Frechet, Burr} x 3
/// configurations of (gamma_1, gamma_2, gamma_C) x c_1 in {1, 0.9, 0.7, 0.5},
/// n = 500, 2000 replications, target cause 1. c_1 = 1 degenerates to a
/// single cause. Burr designs use beta = 1 and (tau_1, tau_2, tau_C) =
/// (12, 6, 5) in configurations 1-2 and (6, 12, 5) in configuration 3.
std::vector<ScenarioConfig> paper_presets();

/// Tiny single-replication design for smoke tests and CLI dry runs.
ScenarioConfig smoke_preset();

/// Preset lookup by name among paper_presets() plus smoke_preset();
/// throws errc::invalid_config for unknown names.
ScenarioConfig find_preset(const std::string& name);

}  // namespace tailcr

#endif  // TAILCR_MONTECARLO_HPP
