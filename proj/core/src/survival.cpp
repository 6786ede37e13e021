#include "tailcr/survival.hpp"

#include <utility>

#include "tailcr/errors.hpp"

namespace tailcr {

EventSelector select_censorings() {
  return [](const Observation& o) { return !o.delta; };
}

EventSelector select_events() {
  return [](const Observation& o) { return o.delta; };
}

EventSelector select_cause(int cause) {
  return [cause](const Observation& o) { return o.delta && o.cause == cause; };
}

EventSelector select_not_cause(int cause) {
  return [cause](const Observation& o) { return !(o.delta && o.cause == cause); };
}

StepFunction km_survival(const CompetingRisksSample& sample, const EventSelector& selector) {
  const std::size_t n = sample.size();
  StepFunction::Builder builder(1.0);
  double surv = 1.0;
  for (std::size_t rank = 0; rank < n; ++rank) {
    const Observation& o = sample.ordered(rank);
    if (selector(o)) {
      surv *= 1.0 - 1.0 / static_cast<double>(n - rank);
      builder.add(o.z, surv);
    }
  }
  return std::move(builder).build();
}

StepFunction aalen_johansen_incidence(const CompetingRisksSample& sample, int cause,
                                      const StepFunction& g_bar) {
  if (cause < 1 || cause > sample.num_causes()) {
    throw stat_error(errc::domain, "cause index out of range");
  }
  const double n = static_cast<double>(sample.size());
  StepFunction::Builder builder(0.0);
  double cumulative = 0.0;
  for (std::size_t rank = 0; rank < sample.size(); ++rank) {
    const Observation& o = sample.ordered(rank);
    if (!o.delta || o.cause != cause) continue;
    const double g_left = g_bar.eval_left(o.z);
    if (!(g_left > 0.0)) {
      throw stat_error(errc::degenerate_weight,
                       "censoring survival vanishes before an uncensored cause-" +
                           std::to_string(cause) + " observation");
    }
    cumulative += 1.0 / (n * g_left);
    builder.add(o.z, cumulative);
  }
  return std::move(builder).build();
}

}  // namespace tailcr
