#include "tailcr/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailcr/errors.hpp"
#include "tailcr/step_function.hpp"
#include "tailcr/survival.hpp"

namespace tailcr {

double LimitParams::gamma_overall() const {
  return 1.0 / (1.0 / gamma_f() + 1.0 / gamma_c);
}

double sigma_squared(double gamma_k, double gamma_c, double c) {
  if (!(gamma_k > 0.0) || !(gamma_c > 0.0)) {
    throw stat_error(errc::domain, "tail indices must be positive");
  }
  if (!(gamma_k < gamma_c)) {
    throw stat_error(errc::strong_censoring,
                     "gamma_k < gamma_c is required for the limit variance");
  }
  if (!(c >= 0.0 && c <= 1.0)) {
    throw stat_error(errc::domain, "c must lie in [0, 1]");
  }
  const double r = gamma_k / gamma_c;
  const double one_minus_r = 1.0 - r;
  // (1 + r^2) - 2 c r  ==  (1 - r)^2 + 2 r (1 - c), but without the c = 1
  // cancellation.
  const double numerator = one_minus_r * one_minus_r + 2.0 * r * (1.0 - c);
  return gamma_k * gamma_k * numerator / (one_minus_r * one_minus_r * one_minus_r);
}

double bias_m(double gamma_k, double rho_k) {
  if (!(gamma_k > 0.0)) {
    throw stat_error(errc::domain, "gamma_k must be positive");
  }
  if (rho_k > 0.0) {
    throw stat_error(errc::domain, "second-order parameter rho_k must be <= 0");
  }
  if (rho_k == 0.0) {
    return gamma_k * gamma_k;
  }
  return gamma_k * gamma_k / (1.0 - gamma_k * rho_k);
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw stat_error(errc::domain, "normal quantile needs p in (0, 1)");
  }
  // Acklam's rational approximation, then two Halley refinements against the
  // erfc-based CDF; the result is accurate to a few ulp.
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x -= u / (1.0 + x * u / 2.0);
  }
  return x;
}

CltDescriptor clt_index(const LimitParams& params, double v_n_hat) {
  if (!(v_n_hat > 0.0)) {
    throw stat_error(errc::domain, "v_n must be positive");
  }
  CltDescriptor out;
  out.mean_shift = params.lambda * bias_m(params.gamma_k, params.rho_k);
  out.variance = sigma_squared(params.gamma_k, params.gamma_c, params.c);
  out.rate = std::sqrt(v_n_hat);
  return out;
}

CltDescriptor clt_quantile(const LimitParams& params, double v_n_hat, double d_n) {
  if (!(d_n > 1.0)) {
    throw stat_error(errc::extrapolation_order, "d_n = tail mass / p must exceed 1");
  }
  CltDescriptor out = clt_index(params, v_n_hat);
  out.rate = std::sqrt(v_n_hat) / std::log(d_n);
  return out;
}

LimitParams estimate_nuisance(const CompetingRisksSample& sample, int cause, std::size_t k_n) {
  LimitParams params;
  params.gamma_k = gamma_aj(sample, cause, ThresholdChoice::top_order(k_n)).gamma_hat;

  // Censoring index: the same machinery with lifetime and censoring swapped.
  // Event indicator 1 - delta; the weights are then the Kaplan-Meier
  // estimate of the lifetime survival.
  params.gamma_c = gamma_km(swap_censoring_roles(sample), 1, k_n).gamma_hat;

  // c-hat = F-bar_n^(k) / sum_j F-bar_n^(j) at the threshold: normalizing by
  // the sum of incidences keeps the ratio in [0, 1] by construction.
  const double t_n = ThresholdChoice::top_order(k_n).resolve(sample);
  const StepFunction g_bar = km_survival(sample, select_censorings());
  double numerator = 0.0;
  double denominator = 0.0;
  for (int j = 1; j <= sample.num_causes(); ++j) {
    const double mass = subsurvival(aalen_johansen_incidence(sample, j, g_bar), t_n);
    denominator += mass;
    if (j == cause) numerator = mass;
  }
  params.c = numerator / denominator;
  return params;
}

Interval confidence_interval(const TailFit& fit, const LimitParams& params, double level) {
  if (!(level >= 0.0) || !(level < 1.0)) {
    throw stat_error(errc::domain, "confidence level must lie in [0, 1)");
  }
  const CltDescriptor clt = clt_index(params, fit.v_n_hat);
  const double z = level == 0.0 ? 0.0 : normal_quantile((1.0 + level) / 2.0);
  const double center = fit.gamma_hat - clt.mean_shift / clt.rate;
  const double half_width = z * std::sqrt(clt.variance) / clt.rate;
  Interval out;
  out.lower = std::max(0.0, center - half_width);
  out.upper = center + half_width;
  return out;
}

Interval quantile_interval(double q_hat, const TailFit& fit, const LimitParams& params,
                           double p, double level) {
  if (!(level >= 0.0) || !(level < 1.0)) {
    throw stat_error(errc::domain, "confidence level must lie in [0, 1)");
  }
  if (!(p > 0.0) || !(p < fit.aj_tail_mass)) {
    throw stat_error(errc::extrapolation_order,
                     "p must lie in (0, tail mass) for the quantile limit law");
  }
  const double d_n = fit.aj_tail_mass / p;
  const CltDescriptor clt = clt_quantile(params, fit.v_n_hat, d_n);
  const double z = level == 0.0 ? 0.0 : normal_quantile((1.0 + level) / 2.0);
  const double sigma = std::sqrt(clt.variance);
  // (rate) * (q_hat / q - 1) ~ N(mean_shift, sigma^2): invert for q.
  const double lower_den = 1.0 + (clt.mean_shift + z * sigma) / clt.rate;
  const double upper_den = 1.0 + (clt.mean_shift - z * sigma) / clt.rate;
  Interval out;
  out.lower = std::max(0.0, q_hat / lower_den);
  out.upper = upper_den > 0.0 ? q_hat / upper_den : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace tailcr
