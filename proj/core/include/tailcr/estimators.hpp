#ifndef TAILCR_ESTIMATORS_HPP
#define TAILCR_ESTIMATORS_HPP

#include <cstddef>
#include <string>
#include <variant>

#include "tailcr/sample.hpp"

namespace tailcr {

/// Threshold above which log-excesses are collected: either a fixed value
/// t_n, or the number k_n of upper order statistics, which resolves to the
/// random threshold Z_(n - k_n).
class ThresholdChoice {
 public:
  static ThresholdChoice deterministic(double t_n);
  static ThresholdChoice top_order(std::size_t k_n);

  bool is_top_order() const { return std::holds_alternative<std::size_t>(choice_); }
  std::size_t k() const { return std::get<std::size_t>(choice_); }
  double t() const { return std::get<double>(choice_); }

  /// The threshold actually used for `sample` (validates 1 <= k_n <= n-1).
  double resolve(const CompetingRisksSample& sample) const;

 private:
  explicit ThresholdChoice(std::variant<double, std::size_t> c) : choice_(c) {}
  std::variant<double, std::size_t> choice_;
};

enum class EstimatorId { aj, bdfg, km };

const char* estimator_name(EstimatorId id) noexcept;
EstimatorId estimator_from_name(const std::string& name);

/// Output of one tail-index fit.
struct TailFit {
  double gamma_hat = 0.0;              ///< extreme value index estimate, >= 0
  double threshold = 0.0;              ///< resolved t_n
  std::size_t n_exceed_cause = 0;      ///< cause-k uncensored exceedances used
  double aj_tail_mass = 0.0;           ///< F-bar_n^(k)(t_n), Aalen-Johansen tail mass
  double km_censor_at_threshold = 0.0; ///< G-bar_n(t_n)
  double v_n_hat = 0.0;                ///< n * aj_tail_mass * km_censor_at_threshold
  EstimatorId estimator_id = EstimatorId::aj;
};

/// The Aalen-Johansen-weighted Hill-type estimator of the cause-specific
/// extreme value index gamma_k:
///
///   gamma_hat = [1 / (n F-bar_n^(k)(t_n))] *
///               sum_{Z_i > t_n} log(Z_i / t_n) delta_i I{cause_i = k} / G-bar_n(Z_i-)
///
/// Exceedance is strict (Z_i > t_n). Throws errc::no_exceedance when no
/// cause-k uncensored observation lies above the threshold.
TailFit gamma_aj(const CompetingRisksSample& sample, int cause, const ThresholdChoice& threshold);

/// Constant-weight competitor: the classical Hill mean of the top k_n
/// log-excesses divided by p-hat, the fraction of those k_n order statistics
/// that are cause-k failures. Treats other causes as independent censoring.
TailFit gamma_bdfg(const CompetingRisksSample& sample, int cause, std::size_t k_n);

/// Kaplan-Meier-weighted competitor built from the modified indicators
/// delta~ = delta * I{cause = k}: both the lifetime and the censoring
/// product limits treat other-cause failures as censorings. The tail mass in
/// the denominator is the mass of Kaplan-Meier jumps above the threshold
/// (the estimated distribution's own tail, not 1 - KM at t_n).
TailFit gamma_km(const CompetingRisksSample& sample, int cause, std::size_t k_n);

/// Generalized log-moment of order alpha >= 0 over the same weighted tail:
/// M_n^(alpha) = [1 / (n F-bar_n^(k)(t_n))] *
///               sum_{Z_i > t_n} log^alpha(Z_i / t_n) delta_i I{cause_i = k} / G-bar_n(Z_i-).
/// M_n^(0) = 1 identically and M_n^(1) equals gamma_aj's estimate.
double moment_alpha(const CompetingRisksSample& sample, int cause,
                    const ThresholdChoice& threshold, double alpha);

/// Extrapolated extreme quantile for P[X > x, cause = k] = p:
/// x-hat = t_n * (F-bar_n^(k)(t_n) / p)^gamma_hat, fitted with gamma_aj.
/// Requires 0 < p < F-bar_n^(k)(t_n), else errc::extrapolation_order.
double weissman_quantile(const CompetingRisksSample& sample, int cause,
                         const ThresholdChoice& threshold, double p);

/// The bare extrapolation formula t_n * (tail_mass / p)^gamma, without the
/// p < tail_mass check; weissman_quantile validates and then calls this.
double weissman_extrapolate(double threshold, double tail_mass, double gamma, double p);

}  // namespace tailcr

#endif  // TAILCR_ESTIMATORS_HPP
