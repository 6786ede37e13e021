#include "tailcr/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>

#include "tailcr/errors.hpp"

namespace tailcr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double evaluate(EstimatorId id, const CompetingRisksSample& sample, int cause, std::size_t k_n) {
  switch (id) {
    case EstimatorId::aj:
      return gamma_aj(sample, cause, ThresholdChoice::top_order(k_n)).gamma_hat;
    case EstimatorId::bdfg:
      return gamma_bdfg(sample, cause, k_n).gamma_hat;
    case EstimatorId::km:
      return gamma_km(sample, cause, k_n).gamma_hat;
  }
  return kNaN;
}

CompetingRisksSample draw_dataset(const ScenarioConfig& config, std::uint64_t replication) {
  SplitMix64 rng = SplitMix64::for_stream(config.master_seed, replication);
  const std::vector<LifetimeDraw> lifetimes = sample_competing_risks(config.specs, config.n, rng);
  const int num_causes = static_cast<int>(config.specs.size());
  if (!config.censoring) {
    std::vector<Observation> observations;
    observations.reserve(lifetimes.size());
    for (const LifetimeDraw& draw : lifetimes) {
      observations.push_back(Observation::event(draw.x, draw.cause));
    }
    return CompetingRisksSample(std::move(observations), num_causes);
  }
  const std::vector<double> censorings = sample_censoring(*config.censoring, config.n, rng);
  return make_observed(lifetimes, censorings, num_causes);
}

double median_of_sorted(const std::vector<double>& sorted) {
  const std::size_t m = sorted.size();
  if (m % 2 == 1) return sorted[m / 2];
  return (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0;
}

}  // namespace

double ScenarioConfig::gamma_true() const {
  return specs.at(static_cast<std::size_t>(target_cause) - 1).gamma;
}

void ScenarioConfig::validate() const {
  validate_specs(specs);
  if (n < 2) {
    throw stat_error(errc::invalid_config, "sample size n must be at least 2");
  }
  if (n_rep < 1) {
    throw stat_error(errc::invalid_config, "replication count must be at least 1");
  }
  if (kn_grid.empty()) {
    throw stat_error(errc::invalid_config, "k_n grid must be nonempty");
  }
  for (std::size_t kn : kn_grid) {
    if (kn < 1 || kn >= n) {
      throw stat_error(errc::invalid_config, "k_n grid values must lie in [1, n-1]");
    }
  }
  if (estimators.empty()) {
    throw stat_error(errc::invalid_config, "at least one estimator must be selected");
  }
  if (target_cause < 1 || static_cast<std::size_t>(target_cause) > specs.size()) {
    throw stat_error(errc::invalid_config, "target cause out of range");
  }
  if (censoring) {
    if (!(censoring->gamma_c > 0.0)) {
      throw stat_error(errc::invalid_config, "censoring gamma must be positive");
    }
    if (censoring->family == TailFamily::burr &&
        (!(censoring->tau_c > 0.0) || !(censoring->beta > 0.0))) {
      throw stat_error(errc::invalid_config, "Burr tau and beta must be positive");
    }
  }
}

ScenarioRun run_scenario_detailed(const ScenarioConfig& config, unsigned workers) {
  config.validate();
  const std::size_t n_cells = config.kn_grid.size() * config.estimators.size();

  ScenarioRun run;
  run.estimates.assign(config.n_rep, std::vector<double>(n_cells, kNaN));

  const auto replicate = [&](std::size_t r) {
    const CompetingRisksSample sample = draw_dataset(config, r);
    std::size_t cell = 0;
    for (std::size_t kn : config.kn_grid) {
      for (EstimatorId id : config.estimators) {
        try {
          run.estimates[r][cell] = evaluate(id, sample, config.target_cause, kn);
        } catch (const stat_error&) {
          // failure stays NaN and is counted per cell
        }
        ++cell;
      }
    }
  };

  if (workers <= 1 || config.n_rep == 1) {
    for (std::size_t r = 0; r < config.n_rep; ++r) replicate(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned thread_count = std::min<unsigned>(workers, static_cast<unsigned>(config.n_rep));
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next.fetch_add(1); r < config.n_rep; r = next.fetch_add(1)) {
          replicate(r);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  // Aggregation runs single-threaded in replication order, so the report is
  // independent of how replications were scheduled.
  const double gamma_true = config.gamma_true();
  run.report.rows.reserve(n_cells);
  std::size_t cell = 0;
  for (std::size_t kn : config.kn_grid) {
    for (EstimatorId id : config.estimators) {
      ReportRow row;
      row.kn = kn;
      row.estimator = id;
      std::vector<double> values;
      values.reserve(config.n_rep);
      for (std::size_t r = 0; r < config.n_rep; ++r) {
        const double v = run.estimates[r][cell];
        if (!std::isnan(v)) values.push_back(v);
      }
      row.failure_count = config.n_rep - values.size();
      if (!values.empty()) {
        double sum = 0.0;
        double sq_err = 0.0;
        for (double v : values) {
          sum += v;
          sq_err += (v - gamma_true) * (v - gamma_true);
        }
        const double m = static_cast<double>(values.size());
        row.mean_estimate = sum / m;
        row.mse = sq_err / m;
        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        row.median_bias = median_of_sorted(sorted) - gamma_true;
        if (values.size() >= 2) {
          double centered = 0.0;
          for (double v : values) {
            centered += (v - *row.mean_estimate) * (v - *row.mean_estimate);
          }
          row.sd_estimate = std::sqrt(centered / (m - 1.0));
        }
      }
      run.report.rows.push_back(std::move(row));
      ++cell;
    }
  }
  return run;
}

MonteCarloReport run_scenario(const ScenarioConfig& config, unsigned workers) {
  return run_scenario_detailed(config, workers).report;
}

namespace {

constexpr std::uint64_t kPresetSeed = 991;

struct PresetTriple {
  int index;
  double gamma_1, gamma_2, gamma_c;
  double tau_1, tau_2, tau_c;
};

constexpr PresetTriple kConfigurations[] = {
    {1, 0.10, 0.25, 0.30, 12.0, 6.0, 5.0},
    {2, 0.10, 0.25, 0.20, 12.0, 6.0, 5.0},
    {3, 0.25, 0.10, 0.45, 6.0, 12.0, 5.0},
};

constexpr double kCauseOneWeights[] = {1.0, 0.9, 0.7, 0.5};

std::string weight_tag(double c1) {
  if (c1 == 1.0) return "c10";
  if (c1 == 0.9) return "c09";
  if (c1 == 0.7) return "c07";
  return "c05";
}

std::vector<std::size_t> default_grid(std::size_t n) {
  std::vector<std::size_t> grid;
  for (std::size_t kn = 10; kn <= n - 20; kn += 10) {
    grid.push_back(kn);
  }
  return grid;
}

}  // namespace

std::vector<ScenarioConfig> paper_presets() {
  std::vector<ScenarioConfig> presets;
  presets.reserve(24);
  for (TailFamily family : {TailFamily::frechet, TailFamily::burr}) {
    for (const PresetTriple& cfg : kConfigurations) {
      for (double c1 : kCauseOneWeights) {
        ScenarioConfig scenario;
        scenario.name = std::string(family_name(family)) + "-cfg" + std::to_string(cfg.index) +
                        "-" + weight_tag(c1);
        SubDistributionSpec cause1{family, cfg.gamma_1, cfg.tau_1, 1.0, c1};
        scenario.specs.push_back(cause1);
        if (c1 < 1.0) {
          SubDistributionSpec cause2{family, cfg.gamma_2, cfg.tau_2, 1.0, 1.0 - c1};
          scenario.specs.push_back(cause2);
        }
        scenario.censoring = CensoringSpec{family, cfg.gamma_c, cfg.tau_c, 1.0};
        scenario.n = 500;
        scenario.n_rep = 2000;
        scenario.kn_grid = default_grid(scenario.n);
        scenario.estimators = {EstimatorId::aj, EstimatorId::bdfg, EstimatorId::km};
        scenario.target_cause = 1;
        scenario.master_seed = kPresetSeed;
        presets.push_back(std::move(scenario));
      }
    }
  }
  return presets;
}

ScenarioConfig smoke_preset() {
  ScenarioConfig scenario;
  scenario.name = "smoke";
  scenario.specs = {SubDistributionSpec{TailFamily::frechet, 0.1, 1.0, 1.0, 0.7},
                    SubDistributionSpec{TailFamily::frechet, 0.25, 1.0, 1.0, 0.3}};
  scenario.censoring = CensoringSpec{TailFamily::frechet, 0.3, 1.0, 1.0};
  scenario.n = 100;
  scenario.n_rep = 1;
  scenario.kn_grid = {10, 20, 40};
  scenario.estimators = {EstimatorId::aj, EstimatorId::bdfg, EstimatorId::km};
  scenario.target_cause = 1;
  scenario.master_seed = kPresetSeed;
  return scenario;
}

ScenarioConfig find_preset(const std::string& name) {
  if (name == "smoke") return smoke_preset();
  for (ScenarioConfig& preset : paper_presets()) {
    if (preset.name == name) return std::move(preset);
  }
  throw stat_error(errc::invalid_config, "unknown preset '" + name + "'");
}

}  // namespace tailcr
