#ifndef TAILCR_SAMPLING_HPP
#define TAILCR_SAMPLING_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "tailcr/rng.hpp"
#include "tailcr/sample.hpp"

namespace tailcr {

enum class TailFamily { frechet, burr };

const char* family_name(TailFamily family) noexcept;
TailFamily family_from_name(const std::string& name);

/// One cause of a competing-risks design. The cause-specific sub-survival is
/// weight * S(t) with S the conditional survival:
///   Frechet: S(t) = 1 - exp(-t^(-1/gamma))
///   Burr:    S(t) = (1 + t^tau / beta)^(-1/(gamma tau)),  t >= 0
/// Both are regularly varying with index -1/gamma. tau and beta are Burr
/// parameters and ignored for the Frechet family.
struct SubDistributionSpec {
  TailFamily family = TailFamily::frechet;
  double gamma = 0.0;
  double tau = 1.0;
  double beta = 1.0;
  double weight = 1.0;
};

/// Censoring law: a proper Frechet or Burr distribution.
struct CensoringSpec {
  TailFamily family = TailFamily::frechet;
  double gamma_c = 0.0;
  double tau_c = 1.0;
  double beta = 1.0;
};

struct LifetimeDraw {
  double x = 0.0;
  int cause = 0;
};

/// Frechet quantile: the t with exp(-t^(-1/gamma)) = u, i.e. (-log u)^(-gamma).
double frechet_quantile(double u, double gamma);

/// Burr survival inverse: the t with (1 + t^tau/beta)^(-1/(gamma tau)) = s,
/// i.e. (beta (s^(-gamma tau) - 1))^(1/tau).
double burr_survival_inverse(double s, double gamma, double tau, double beta);

/// Conditional (normalized) survival S(t) of one spec, and the weighted
/// sub-survival weight * S(t).
double conditional_survival(const SubDistributionSpec& spec, double t);
double sub_survival(const SubDistributionSpec& spec, double t);

/// Survival of the overall lifetime X: sum_k weight_k S_k(t).
double mixture_survival(const std::vector<SubDistributionSpec>& specs, double t);

double censoring_survival(const CensoringSpec& spec, double t);

/// Validates gammas/taus/betas positive, weights in (0,1] summing to 1
/// within 1e-12; throws errc::invalid_config otherwise.
void validate_specs(const std::vector<SubDistributionSpec>& specs);

/// Draws n latent lifetimes with their causes: cause k with probability
/// weight_k, then X from the conditional law by inversion. Two uniforms per
/// draw, consumed in a fixed order.
std::vector<LifetimeDraw> sample_competing_risks(const std::vector<SubDistributionSpec>& specs,
                                                 std::size_t n, SplitMix64& rng);

std::vector<double> sample_censoring(const CensoringSpec& spec, std::size_t n, SplitMix64& rng);

/// Observed data: z = min(x, c), delta = I{x <= c} (ties count as events),
/// cause kept only when uncensored.
CompetingRisksSample make_observed(const std::vector<LifetimeDraw>& lifetimes,
                                   const std::vector<double>& censorings, int num_causes);
CompetingRisksSample make_observed(const std::vector<LifetimeDraw>& lifetimes,
                                   const std::vector<double>& censorings);

}  // namespace tailcr

#endif  // TAILCR_SAMPLING_HPP
