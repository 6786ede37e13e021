#ifndef TAILCR_ASYMPTOTICS_HPP
#define TAILCR_ASYMPTOTICS_HPP

#include <cstddef>
#include <optional>

#include "tailcr/estimators.hpp"
#include "tailcr/sample.hpp"

namespace tailcr {

/// Limit-law parameters for the weak-censoring CLT. gamma_k and gamma_c are
/// the cause-k and censoring tail indices; c is the limit of the ratio
/// F-bar^(k)/F-bar in [0,1]; rho_k <= 0 is the second-order parameter and
/// lambda >= 0 the limit of sqrt(v_n) g(t_n). No estimator for rho_k or
/// lambda exists here; they are user inputs defaulting to 0, which makes
/// the intervals bias-neglecting.
struct LimitParams {
  double gamma_k = 0.0;
  double gamma_c = 0.0;
  double c = 1.0;
  double rho_k = 0.0;
  double lambda = 0.0;
  /// Overall lifetime index max_k gamma_k, when known; defaults to gamma_k.
  std::optional<double> gamma_f_override;

  double r() const { return gamma_k / gamma_c; }
  double gamma_f() const { return gamma_f_override.value_or(gamma_k); }
  /// Index of the observed minimum: 1/gamma = 1/gamma_F + 1/gamma_C.
  double gamma_overall() const;
};

/// Limit distribution descriptor: the estimator (or relative quantile
/// error) times `rate` converges to N(mean_shift, variance).
struct CltDescriptor {
  double mean_shift = 0.0;
  double variance = 0.0;
  double rate = 0.0;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Asymptotic variance of the index estimator, with r = gamma_k / gamma_c:
/// sigma^2 = gamma_k^2 ((1 + r^2) - 2 c r) / (1 - r)^3, computed through the
/// cancellation-free equivalent (1 - r)^2 + 2 r (1 - c) so that c = 1
/// collapses exactly to gamma_k^2 / (1 - r).
/// Requires 0 < gamma_k < gamma_c (else errc::strong_censoring) and
/// c in [0,1].
double sigma_squared(double gamma_k, double gamma_c, double c);

/// Asymptotic mean-shift factor m: gamma_k^2 / (1 - gamma_k rho_k) for
/// rho_k < 0, and gamma_k^2 at rho_k = 0. The bias of the estimator is
/// lambda * m / sqrt(v_n).
double bias_m(double gamma_k, double rho_k);

/// Quantile of the standard normal distribution, accurate to ~1e-13.
double normal_quantile(double p);

CltDescriptor clt_index(const LimitParams& params, double v_n_hat);
CltDescriptor clt_quantile(const LimitParams& params, double v_n_hat, double d_n);

/// Plug-in nuisance parameters from data: gamma_k via the Aalen-Johansen
/// weighted estimator, gamma_c via the single-risk Kaplan-Meier-weighted
/// estimator with the roles of lifetime and censoring swapped, and c via
/// F-bar_n^(k) / sum_j F-bar_n^(j) at the threshold Z_(n - k_n).
/// rho_k and lambda are left at their defaults.
LimitParams estimate_nuisance(const CompetingRisksSample& sample, int cause, std::size_t k_n);

/// Two-sided interval for gamma_k at confidence `level` in [0, 1):
/// gamma_hat - lambda m / sqrt(v_n) -+ z_{(1+level)/2} sigma / sqrt(v_n),
/// clipped below at 0. level = 0 degenerates to the bias-corrected point.
Interval confidence_interval(const TailFit& fit, const LimitParams& params, double level);

/// Interval for the true extreme quantile x^(k)_p obtained by inverting the
/// relative-error limit law with d_n = F-bar_n^(k)(t_n) / p:
/// q_hat / (1 + (lambda m -+ z sigma) log(d_n) / sqrt(v_n)).
/// An endpoint whose denominator is <= 0 becomes +infinity.
Interval quantile_interval(double q_hat, const TailFit& fit, const LimitParams& params,
                           double p, double level);

}  // namespace tailcr

#endif  // TAILCR_ASYMPTOTICS_HPP
