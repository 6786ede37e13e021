#include "tailcr/estimators.hpp"

#include <cmath>
#include <cstddef>

#include "tailcr/errors.hpp"
#include "tailcr/step_function.hpp"
#include "tailcr/survival.hpp"

namespace tailcr {

ThresholdChoice ThresholdChoice::deterministic(double t_n) {
  if (!(t_n > 0.0) || !std::isfinite(t_n)) {
    throw stat_error(errc::domain, "threshold must be positive and finite");
  }
  return ThresholdChoice(std::variant<double, std::size_t>(std::in_place_index<0>, t_n));
}

ThresholdChoice ThresholdChoice::top_order(std::size_t k_n) {
  if (k_n < 1) {
    throw stat_error(errc::domain, "k_n must be at least 1");
  }
  return ThresholdChoice(std::variant<double, std::size_t>(std::in_place_index<1>, k_n));
}

double ThresholdChoice::resolve(const CompetingRisksSample& sample) const {
  if (!is_top_order()) {
    return t();
  }
  const std::size_t n = sample.size();
  if (k() >= n) {
    throw stat_error(errc::domain, "k_n must satisfy 1 <= k_n <= n-1");
  }
  return sample.order_statistic(n - k());
}

const char* estimator_name(EstimatorId id) noexcept {
  switch (id) {
    case EstimatorId::aj: return "aj";
    case EstimatorId::bdfg: return "bdfg";
    case EstimatorId::km: return "km";
  }
  return "?";
}

EstimatorId estimator_from_name(const std::string& name) {
  if (name == "aj") return EstimatorId::aj;
  if (name == "bdfg") return EstimatorId::bdfg;
  if (name == "km") return EstimatorId::km;
  throw stat_error(errc::invalid_config, "unknown estimator '" + name + "'");
}

namespace {

void check_cause(const CompetingRisksSample& sample, int cause) {
  if (cause < 1 || cause > sample.num_causes()) {
    throw stat_error(errc::domain, "cause index out of range");
  }
}

/// Canonical rank of the first strict exceedance of t_n (== n if none).
std::size_t first_exceedance_rank(const CompetingRisksSample& sample, double t_n) {
  std::size_t lo = 0, hi = sample.size();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (sample.ordered(mid).z > t_n) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

struct WeightedTailSums {
  double s0 = 0.0;      ///< sum of 1 / weight(Z_i-) over cause-k uncensored exceedances
  double s_alpha = 0.0; ///< same sum with log^alpha(Z_i / t_n) in the numerator
  std::size_t count = 0;
};

/// Accumulates the inverse-probability-weighted tail sums that every
/// Aalen-Johansen style quantity is built from. `weights` is evaluated at
/// left limits; a vanishing weight at a needed term is an error rather than
/// a silently dropped (and biasing) observation.
WeightedTailSums weighted_tail_sums(const CompetingRisksSample& sample, int cause, double t_n,
                                    const StepFunction& weights, double alpha) {
  WeightedTailSums sums;
  for (std::size_t rank = first_exceedance_rank(sample, t_n); rank < sample.size(); ++rank) {
    const Observation& o = sample.ordered(rank);
    if (!o.delta || o.cause != cause) continue;
    const double w = weights.eval_left(o.z);
    if (!(w > 0.0)) {
      throw stat_error(errc::degenerate_weight,
                       "product-limit weight vanishes at an exceedance; the largest "
                       "observations are censored in a pathological pattern");
    }
    double num;
    if (alpha == 0.0) {
      num = 1.0;
    } else if (alpha == 1.0) {
      num = std::log(o.z / t_n);
    } else {
      num = std::pow(std::log(o.z / t_n), alpha);
    }
    sums.s0 += 1.0 / w;
    sums.s_alpha += num / w;
    ++sums.count;
  }
  return sums;
}

void fill_sample_diagnostics(TailFit& fit, const CompetingRisksSample& sample,
                             const WeightedTailSums& aj_sums, const StepFunction& g_bar) {
  const double n = static_cast<double>(sample.size());
  fit.aj_tail_mass = aj_sums.s0 / n;
  fit.km_censor_at_threshold = g_bar(fit.threshold);
  fit.v_n_hat = n * fit.aj_tail_mass * fit.km_censor_at_threshold;
}

}  // namespace

TailFit gamma_aj(const CompetingRisksSample& sample, int cause, const ThresholdChoice& threshold) {
  check_cause(sample, cause);
  const double t_n = threshold.resolve(sample);
  const StepFunction g_bar = km_survival(sample, select_censorings());
  const WeightedTailSums sums = weighted_tail_sums(sample, cause, t_n, g_bar, 1.0);
  if (sums.count == 0) {
    throw stat_error(errc::no_exceedance,
                     "no uncensored cause-" + std::to_string(cause) +
                         " observation above the threshold");
  }
  TailFit fit;
  fit.gamma_hat = sums.s_alpha / sums.s0;  // (1/(n F-bar)) * s_alpha with n F-bar = s0
  fit.threshold = t_n;
  fit.n_exceed_cause = sums.count;
  fit.estimator_id = EstimatorId::aj;
  fill_sample_diagnostics(fit, sample, sums, g_bar);
  return fit;
}

TailFit gamma_bdfg(const CompetingRisksSample& sample, int cause, std::size_t k_n) {
  check_cause(sample, cause);
  const std::size_t n = sample.size();
  const double t_n = ThresholdChoice::top_order(k_n).resolve(sample);

  double log_excess_sum = 0.0;
  std::size_t cause_count = 0;
  for (std::size_t i = 1; i <= k_n; ++i) {
    const Observation& o = sample.ordered(n - i);
    log_excess_sum += std::log(o.z / t_n);
    if (o.delta && o.cause == cause) ++cause_count;
  }
  if (cause_count == 0) {
    throw stat_error(errc::no_exceedance,
                     "no uncensored cause-" + std::to_string(cause) +
                         " observation among the top k_n order statistics");
  }
  const double hill = log_excess_sum / static_cast<double>(k_n);
  const double p_hat = static_cast<double>(cause_count) / static_cast<double>(k_n);

  TailFit fit;
  fit.gamma_hat = hill / p_hat;
  fit.threshold = t_n;
  fit.n_exceed_cause = cause_count;
  fit.estimator_id = EstimatorId::bdfg;
  const StepFunction g_bar = km_survival(sample, select_censorings());
  fill_sample_diagnostics(fit, sample, weighted_tail_sums(sample, cause, t_n, g_bar, 0.0), g_bar);
  return fit;
}

TailFit gamma_km(const CompetingRisksSample& sample, int cause, std::size_t k_n) {
  check_cause(sample, cause);
  const double t_n = ThresholdChoice::top_order(k_n).resolve(sample);
  const double n = static_cast<double>(sample.size());

  // Both product limits are built from the modified indicator
  // delta~ = delta * I{cause = k}: other-cause failures join the censorings.
  const StepFunction f_b = km_survival(sample, select_cause(cause));
  const StepFunction g_b = km_survival(sample, select_not_cause(cause));

  // Tail mass of the estimated lifetime distribution above t_n: the jumps of
  // the Kaplan-Meier distribution function beyond the threshold. (Not
  // 1 - KM(t_n): a censored maximum leaves undistributed mass which does not
  // belong to the tail.)
  const double tail_mass = f_b(t_n) - f_b.final_value();

  double log_sum = 0.0;
  std::size_t count = 0;
  for (std::size_t rank = first_exceedance_rank(sample, t_n); rank < sample.size(); ++rank) {
    const Observation& o = sample.ordered(rank);
    if (!o.delta || o.cause != cause) continue;
    const double w = g_b.eval_left(o.z);
    if (!(w > 0.0)) {
      throw stat_error(errc::degenerate_weight,
                       "modified censoring product limit vanishes at an exceedance");
    }
    log_sum += std::log(o.z / t_n) / w;
    ++count;
  }
  if (count == 0 || !(tail_mass > 0.0)) {
    throw stat_error(errc::no_exceedance,
                     "no uncensored cause-" + std::to_string(cause) +
                         " observation above the threshold");
  }

  TailFit fit;
  fit.gamma_hat = log_sum / (n * tail_mass);
  fit.threshold = t_n;
  fit.n_exceed_cause = count;
  fit.estimator_id = EstimatorId::km;
  const StepFunction g_bar = km_survival(sample, select_censorings());
  fill_sample_diagnostics(fit, sample, weighted_tail_sums(sample, cause, t_n, g_bar, 0.0), g_bar);
  return fit;
}

double moment_alpha(const CompetingRisksSample& sample, int cause,
                    const ThresholdChoice& threshold, double alpha) {
  if (!(alpha >= 0.0)) {
    throw stat_error(errc::domain, "moment order alpha must be nonnegative");
  }
  check_cause(sample, cause);
  const double t_n = threshold.resolve(sample);
  const StepFunction g_bar = km_survival(sample, select_censorings());
  const WeightedTailSums sums = weighted_tail_sums(sample, cause, t_n, g_bar, alpha);
  if (sums.count == 0) {
    throw stat_error(errc::no_exceedance,
                     "no uncensored cause-" + std::to_string(cause) +
                         " observation above the threshold");
  }
  return sums.s_alpha / sums.s0;
}

double weissman_extrapolate(double threshold, double tail_mass, double gamma, double p) {
  return threshold * std::pow(tail_mass / p, gamma);
}

double weissman_quantile(const CompetingRisksSample& sample, int cause,
                         const ThresholdChoice& threshold, double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw stat_error(errc::domain, "exceedance probability must lie in (0, 1)");
  }
  const TailFit fit = gamma_aj(sample, cause, threshold);
  if (!(p < fit.aj_tail_mass)) {
    throw stat_error(errc::extrapolation_order,
                     "p must be smaller than the estimated tail mass at the threshold; "
                     "the extrapolation only reaches beyond the data range");
  }
  return weissman_extrapolate(fit.threshold, fit.aj_tail_mass, fit.gamma_hat, p);
}

}  // namespace tailcr
