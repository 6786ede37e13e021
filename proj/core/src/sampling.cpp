#include "tailcr/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tailcr/errors.hpp"

namespace tailcr {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SplitMix64 SplitMix64::for_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
  return SplitMix64(mix64(master_seed + kGolden * (stream_index + 1)));
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::next_uniform() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

const char* family_name(TailFamily family) noexcept {
  return family == TailFamily::frechet ? "frechet" : "burr";
}

TailFamily family_from_name(const std::string& name) {
  if (name == "frechet") return TailFamily::frechet;
  if (name == "burr") return TailFamily::burr;
  throw stat_error(errc::invalid_config, "unknown tail family '" + name + "'");
}

double frechet_quantile(double u, double gamma) {
  if (!(gamma > 0.0)) {
    throw stat_error(errc::domain, "gamma must be positive");
  }
  if (!(u > 0.0) || !(u < 1.0)) {
    throw stat_error(errc::domain, "quantile level must lie in (0, 1)");
  }
  return std::pow(-std::log(u), -gamma);
}

double burr_survival_inverse(double s, double gamma, double tau, double beta) {
  if (!(gamma > 0.0) || !(tau > 0.0) || !(beta > 0.0)) {
    throw stat_error(errc::domain, "Burr parameters must be positive");
  }
  if (!(s > 0.0) || !(s < 1.0)) {
    throw stat_error(errc::domain, "survival level must lie in (0, 1)");
  }
  return std::pow(beta * (std::pow(s, -gamma * tau) - 1.0), 1.0 / tau);
}

double conditional_survival(const SubDistributionSpec& spec, double t) {
  if (t <= 0.0) return 1.0;
  if (spec.family == TailFamily::frechet) {
    return 1.0 - std::exp(-std::pow(t, -1.0 / spec.gamma));
  }
  return std::pow(1.0 + std::pow(t, spec.tau) / spec.beta, -1.0 / (spec.gamma * spec.tau));
}

double sub_survival(const SubDistributionSpec& spec, double t) {
  return spec.weight * conditional_survival(spec, t);
}

double mixture_survival(const std::vector<SubDistributionSpec>& specs, double t) {
  double total = 0.0;
  for (const SubDistributionSpec& spec : specs) {
    total += sub_survival(spec, t);
  }
  return total;
}

double censoring_survival(const CensoringSpec& spec, double t) {
  if (t <= 0.0) return 1.0;
  if (spec.family == TailFamily::frechet) {
    return 1.0 - std::exp(-std::pow(t, -1.0 / spec.gamma_c));
  }
  return std::pow(1.0 + std::pow(t, spec.tau_c) / spec.beta, -1.0 / (spec.gamma_c * spec.tau_c));
}

void validate_specs(const std::vector<SubDistributionSpec>& specs) {
  if (specs.empty()) {
    throw stat_error(errc::invalid_config, "at least one sub-distribution is required");
  }
  double weight_sum = 0.0;
  for (const SubDistributionSpec& spec : specs) {
    if (!(spec.gamma > 0.0)) {
      throw stat_error(errc::invalid_config, "sub-distribution gamma must be positive");
    }
    if (spec.family == TailFamily::burr && (!(spec.tau > 0.0) || !(spec.beta > 0.0))) {
      throw stat_error(errc::invalid_config, "Burr tau and beta must be positive");
    }
    if (!(spec.weight > 0.0) || spec.weight > 1.0) {
      throw stat_error(errc::invalid_config, "mixture weights must lie in (0, 1]");
    }
    weight_sum += spec.weight;
  }
  if (std::abs(weight_sum - 1.0) > 1e-12) {
    throw stat_error(errc::invalid_config, "mixture weights must sum to 1");
  }
}

std::vector<LifetimeDraw> sample_competing_risks(const std::vector<SubDistributionSpec>& specs,
                                                 std::size_t n, SplitMix64& rng) {
  validate_specs(specs);
  std::vector<LifetimeDraw> draws;
  draws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u_cause = rng.next_uniform();
    const double u_value = rng.next_uniform();
    std::size_t k = 0;
    double cum = specs[0].weight;
    while (k + 1 < specs.size() && u_cause > cum) {
      ++k;
      cum += specs[k].weight;
    }
    const SubDistributionSpec& spec = specs[k];
    const double x = spec.family == TailFamily::frechet
                         ? frechet_quantile(u_value, spec.gamma)
                         : burr_survival_inverse(u_value, spec.gamma, spec.tau, spec.beta);
    draws.push_back({x, static_cast<int>(k) + 1});
  }
  return draws;
}

std::vector<double> sample_censoring(const CensoringSpec& spec, std::size_t n, SplitMix64& rng) {
  if (!(spec.gamma_c > 0.0)) {
    throw stat_error(errc::invalid_config, "censoring gamma must be positive");
  }
  if (spec.family == TailFamily::burr && (!(spec.tau_c > 0.0) || !(spec.beta > 0.0))) {
    throw stat_error(errc::invalid_config, "Burr tau and beta must be positive");
  }
  std::vector<double> draws;
  draws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.next_uniform();
    draws.push_back(spec.family == TailFamily::frechet
                        ? frechet_quantile(u, spec.gamma_c)
                        : burr_survival_inverse(u, spec.gamma_c, spec.tau_c, spec.beta));
  }
  return draws;
}

CompetingRisksSample make_observed(const std::vector<LifetimeDraw>& lifetimes,
                                   const std::vector<double>& censorings, int num_causes) {
  if (lifetimes.size() != censorings.size()) {
    throw stat_error(errc::domain, "lifetime and censoring vectors must have equal length");
  }
  std::vector<Observation> observations;
  observations.reserve(lifetimes.size());
  for (std::size_t i = 0; i < lifetimes.size(); ++i) {
    if (lifetimes[i].x <= censorings[i]) {
      observations.push_back(Observation::event(lifetimes[i].x, lifetimes[i].cause));
    } else {
      observations.push_back(Observation::censored(censorings[i]));
    }
  }
  return CompetingRisksSample(std::move(observations), num_causes);
}

CompetingRisksSample make_observed(const std::vector<LifetimeDraw>& lifetimes,
                                   const std::vector<double>& censorings) {
  int max_cause = 1;
  for (const LifetimeDraw& draw : lifetimes) {
    max_cause = std::max(max_cause, draw.cause);
  }
  return make_observed(lifetimes, censorings, max_cause);
}

}  // namespace tailcr
