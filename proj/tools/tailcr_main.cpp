// tailcr: cause-specific extreme value inference for right-censored
// competing-risks data, plus the Monte Carlo harness. Exit codes: 0 success,
// 2 input error (flags, files, configs), 3 statistical/domain error.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tailcr/asymptotics.hpp"
#include "tailcr/errors.hpp"
#include "tailcr/estimators.hpp"
#include "tailcr/io.hpp"
#include "tailcr/montecarlo.hpp"
#include "tailcr/version.hpp"

namespace {

using tailcr::format_double;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitStat = 3;

struct FitOptions {
  std::string dataset_path;
  int cause = 1;
  std::optional<std::size_t> kn;
  std::optional<double> threshold;
  std::optional<double> gamma_c;
  std::optional<double> c;
  double lambda = 0.0;
  double rho = 0.0;
  double level = 0.95;
  bool json = false;
};

struct QuantileOptions {
  FitOptions fit;
  double p = 0.0;
};

struct SimulateOptions {
  std::string config_path;
  std::string preset;
  std::string out_path;
  unsigned workers = 1;
  bool list_presets = false;
};

tailcr::ThresholdChoice threshold_of(const FitOptions& opt) {
  if (opt.kn) {
    return tailcr::ThresholdChoice::top_order(*opt.kn);
  }
  return tailcr::ThresholdChoice::deterministic(*opt.threshold);
}

/// k_n used for the nuisance plug-ins: the requested one, or for a fixed
/// threshold the number of strict exceedances (capped at n-1).
std::size_t nuisance_kn(const FitOptions& opt, const tailcr::CompetingRisksSample& sample,
                        double resolved_threshold) {
  if (opt.kn) return *opt.kn;
  std::size_t count = 0;
  for (const tailcr::Observation& o : sample.observations()) {
    if (o.z > resolved_threshold) ++count;
  }
  return std::min(count, sample.size() - 1);
}

struct CiInputs {
  tailcr::LimitParams params;
  std::string gamma_c_origin;  // "flag" or "estimated"
  std::string c_origin;
};

/// Assembles the limit parameters from flags, estimating the missing ones.
/// Throws stat_error when an estimate is required but unavailable.
CiInputs assemble_params(const FitOptions& opt, const tailcr::CompetingRisksSample& sample,
                         const tailcr::TailFit& fit) {
  CiInputs in;
  in.params.gamma_k = fit.gamma_hat;
  in.params.rho_k = opt.rho;
  in.params.lambda = opt.lambda;
  if (opt.gamma_c && opt.c) {
    in.params.gamma_c = *opt.gamma_c;
    in.params.c = *opt.c;
    in.gamma_c_origin = in.c_origin = "flag";
    return in;
  }
  const tailcr::LimitParams estimated =
      tailcr::estimate_nuisance(sample, opt.cause, nuisance_kn(opt, sample, fit.threshold));
  in.params.gamma_c = opt.gamma_c ? *opt.gamma_c : estimated.gamma_c;
  in.gamma_c_origin = opt.gamma_c ? "flag" : "estimated";
  in.params.c = opt.c ? *opt.c : estimated.c;
  in.c_origin = opt.c ? "flag" : "estimated";
  return in;
}

void add_ci_flags(CLI::App* cmd, FitOptions& opt) {
  cmd->add_option("--gamma-c", opt.gamma_c, "Censoring tail index (estimated when omitted)");
  cmd->add_option("--c", opt.c, "Limit of tail-mass ratio c (estimated when omitted)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--lambda", opt.lambda, "Bias-rate limit lambda >= 0 (default 0: bias neglected)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--rho", opt.rho, "Second-order parameter rho_k <= 0 (default 0)")
      ->check(CLI::Range(-1e9, 0.0));
  cmd->add_option("--level", opt.level, "Confidence level in [0, 1)")
      ->check(CLI::Range(0.0, 1.0).description("FLOAT in [0,1)"));
}

int run_fit(const FitOptions& opt) {
  const tailcr::CompetingRisksSample sample = tailcr::read_dataset_file(opt.dataset_path);
  const tailcr::TailFit fit = tailcr::gamma_aj(sample, opt.cause, threshold_of(opt));

  std::optional<CiInputs> ci_inputs;
  std::optional<double> sigma2;
  std::optional<tailcr::Interval> ci;
  std::string ci_unavailable;
  try {
    ci_inputs = assemble_params(opt, sample, fit);
    sigma2 = tailcr::sigma_squared(ci_inputs->params.gamma_k, ci_inputs->params.gamma_c,
                                   ci_inputs->params.c);
    ci = tailcr::confidence_interval(fit, ci_inputs->params, opt.level);
  } catch (const tailcr::stat_error& e) {
    ci_unavailable = e.what();
  }

  if (opt.json) {
    nlohmann::json j;
    j["estimator"] = "aj";
    j["n"] = sample.size();
    j["cause"] = opt.cause;
    if (opt.kn) j["kn"] = *opt.kn;
    j["threshold"] = fit.threshold;
    j["gamma_hat"] = fit.gamma_hat;
    j["n_exceed_cause"] = fit.n_exceed_cause;
    j["aj_tail_mass"] = fit.aj_tail_mass;
    j["km_censor_at_threshold"] = fit.km_censor_at_threshold;
    j["v_n_hat"] = fit.v_n_hat;
    j["lambda"] = opt.lambda;
    j["rho"] = opt.rho;
    if (ci) {
      j["gamma_c"] = ci_inputs->params.gamma_c;
      j["c"] = ci_inputs->params.c;
      j["sigma2"] = *sigma2;
      j["level"] = opt.level;
      j["ci"] = {ci->lower, ci->upper};
    } else {
      j["ci_unavailable"] = ci_unavailable;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  std::cout << "estimator: aj\n";
  std::cout << "n: " << sample.size() << "\n";
  std::cout << "cause: " << opt.cause << "\n";
  if (opt.kn) std::cout << "kn: " << *opt.kn << "\n";
  std::cout << "threshold: " << format_double(fit.threshold) << "\n";
  std::cout << "gamma_hat: " << format_double(fit.gamma_hat) << "\n";
  std::cout << "n_exceed_cause: " << fit.n_exceed_cause << "\n";
  std::cout << "aj_tail_mass: " << format_double(fit.aj_tail_mass) << "\n";
  std::cout << "km_censor_at_threshold: " << format_double(fit.km_censor_at_threshold) << "\n";
  std::cout << "v_n_hat: " << format_double(fit.v_n_hat) << "\n";
  std::cout << "lambda: " << format_double(opt.lambda)
            << (opt.lambda == 0.0 ? " (bias neglected)" : "") << "\n";
  std::cout << "rho: " << format_double(opt.rho) << "\n";
  if (ci) {
    std::cout << "gamma_c: " << format_double(ci_inputs->params.gamma_c) << " ("
              << ci_inputs->gamma_c_origin << ")\n";
    std::cout << "c: " << format_double(ci_inputs->params.c) << " (" << ci_inputs->c_origin
              << ")\n";
    std::cout << "sigma2: " << format_double(*sigma2) << "\n";
    std::cout << "level: " << format_double(opt.level) << "\n";
    std::cout << "ci: [" << format_double(ci->lower) << ", " << format_double(ci->upper) << "]\n";
  } else {
    std::cout << "ci: unavailable (" << ci_unavailable << ")\n";
  }
  return kExitOk;
}

int run_quantile(const QuantileOptions& opt) {
  const tailcr::CompetingRisksSample sample = tailcr::read_dataset_file(opt.fit.dataset_path);
  const tailcr::ThresholdChoice threshold = threshold_of(opt.fit);
  const tailcr::TailFit fit = tailcr::gamma_aj(sample, opt.fit.cause, threshold);
  const double q_hat = tailcr::weissman_quantile(sample, opt.fit.cause, threshold, opt.p);
  const double d_n = fit.aj_tail_mass / opt.p;

  std::optional<CiInputs> ci_inputs;
  std::optional<tailcr::Interval> ci;
  std::string ci_unavailable;
  try {
    ci_inputs = assemble_params(opt.fit, sample, fit);
    ci = tailcr::quantile_interval(q_hat, fit, ci_inputs->params, opt.p, opt.fit.level);
  } catch (const tailcr::stat_error& e) {
    ci_unavailable = e.what();
  }

  if (opt.fit.json) {
    nlohmann::json j;
    j["n"] = sample.size();
    j["cause"] = opt.fit.cause;
    j["p"] = opt.p;
    j["threshold"] = fit.threshold;
    j["gamma_hat"] = fit.gamma_hat;
    j["aj_tail_mass"] = fit.aj_tail_mass;
    j["d_n"] = d_n;
    j["quantile"] = q_hat;
    if (ci) {
      j["level"] = opt.fit.level;
      j["ci"] = {ci->lower, ci->upper};
    } else {
      j["ci_unavailable"] = ci_unavailable;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  std::cout << "n: " << sample.size() << "\n";
  std::cout << "cause: " << opt.fit.cause << "\n";
  std::cout << "p: " << format_double(opt.p) << "\n";
  std::cout << "threshold: " << format_double(fit.threshold) << "\n";
  std::cout << "gamma_hat: " << format_double(fit.gamma_hat) << "\n";
  std::cout << "aj_tail_mass: " << format_double(fit.aj_tail_mass) << "\n";
  std::cout << "d_n: " << format_double(d_n) << "\n";
  std::cout << "quantile: " << format_double(q_hat) << "\n";
  if (ci) {
    std::cout << "level: " << format_double(opt.fit.level) << "\n";
    std::cout << "ci: [" << format_double(ci->lower) << ", " << format_double(ci->upper) << "]\n";
  } else {
    std::cout << "ci: unavailable (" << ci_unavailable << ")\n";
  }
  return kExitOk;
}

int run_simulate(const SimulateOptions& opt) {
  if (opt.list_presets) {
    for (const tailcr::ScenarioConfig& preset : tailcr::paper_presets()) {
      std::cout << preset.name << "\n";
    }
    std::cout << "smoke\n";
    return kExitOk;
  }
  if (opt.config_path.empty() == opt.preset.empty()) {
    std::cerr << "simulate needs exactly one of --config / --preset\n";
    return kExitInput;
  }
  tailcr::ScenarioConfig config = opt.config_path.empty()
                                      ? tailcr::find_preset(opt.preset)
                                      : tailcr::read_config_file(opt.config_path);
  if (const char* env = std::getenv("TAILCR_SEED")) {
    try {
      config.master_seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "TAILCR_SEED must be an unsigned integer\n";
      return kExitInput;
    }
  }
  const tailcr::MonteCarloReport report = tailcr::run_scenario(config, opt.workers);
  const std::string content = tailcr::serialize_report(report, tailcr::make_manifest(config));
  tailcr::atomic_write_file(opt.out_path, content);
  std::cout << "wrote " << opt.out_path << " (" << report.rows.size() << " rows, scenario "
            << config.name << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cause-specific extreme value inference under right censoring and competing risks"};
  app.set_version_flag("--version", std::string("tailcr ") + tailcr::kVersion);
  app.require_subcommand(1);

  FitOptions fit_opt;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Estimate the cause-specific tail index");
  fit_cmd->add_option("dataset", fit_opt.dataset_path, "CSV file with header z,delta,cause")
      ->required();
  fit_cmd->add_option("--cause", fit_opt.cause, "Failure cause of interest (default 1)")
      ->check(CLI::PositiveNumber);
  auto* fit_kn = fit_cmd->add_option("--kn", fit_opt.kn, "Number of upper order statistics");
  auto* fit_thr =
      fit_cmd->add_option("--threshold", fit_opt.threshold, "Fixed threshold t_n > 0")
          ->check(CLI::PositiveNumber);
  fit_kn->excludes(fit_thr);
  fit_thr->excludes(fit_kn);
  add_ci_flags(fit_cmd, fit_opt);
  fit_cmd->add_flag("--json", fit_opt.json, "Emit a JSON object instead of text");

  QuantileOptions q_opt;
  CLI::App* q_cmd = app.add_subcommand("quantile", "Extrapolate an extreme quantile");
  q_cmd->add_option("dataset", q_opt.fit.dataset_path, "CSV file with header z,delta,cause")
      ->required();
  q_cmd->add_option("--cause", q_opt.fit.cause, "Failure cause of interest (default 1)")
      ->check(CLI::PositiveNumber);
  q_cmd->add_option("--kn", q_opt.fit.kn, "Number of upper order statistics")->required();
  q_cmd->add_option("--p", q_opt.p, "Exceedance probability, 0 < p < tail mass")->required();
  add_ci_flags(q_cmd, q_opt.fit);
  q_cmd->add_flag("--json", q_opt.fit.json, "Emit a JSON object instead of text");

  SimulateOptions sim_opt;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Run a Monte Carlo scenario");
  sim_cmd->add_option("--config", sim_opt.config_path, "Scenario config JSON file");
  sim_cmd->add_option("--preset", sim_opt.preset, "Built-in scenario name (see --list-presets)");
  sim_cmd->add_option("--out", sim_opt.out_path, "Output report CSV path");
  sim_cmd->add_option("--workers", sim_opt.workers, "Worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_flag("--list-presets", sim_opt.list_presets, "List preset names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (fit_cmd->parsed()) {
      if (fit_opt.kn.has_value() == fit_opt.threshold.has_value()) {
        std::cerr << "fit needs exactly one of --kn / --threshold\n";
        return kExitInput;
      }
      return run_fit(fit_opt);
    }
    if (q_cmd->parsed()) {
      if (!(q_opt.p > 0.0) || !(q_opt.p < 1.0)) {
        std::cerr << "--p must lie in (0, 1)\n";
        return kExitInput;
      }
      return run_quantile(q_opt);
    }
    if (sim_cmd->parsed()) {
      if (!sim_opt.list_presets && sim_opt.out_path.empty()) {
        std::cerr << "simulate needs --out\n";
        return kExitInput;
      }
      return run_simulate(sim_opt);
    }
  } catch (const tailcr::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const tailcr::stat_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == tailcr::errc::invalid_config ? kExitInput : kExitStat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
