#include "tailcr/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "tailcr/errors.hpp"

namespace tailcr {

namespace {

std::vector<std::size_t> canonical_order_of(const std::vector<Observation>& obs) {
  std::vector<std::size_t> order(obs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Times ascending; at ties uncensored observations enter the risk set
  // computation first, then input order.
  std::sort(order.begin(), order.end(), [&obs](std::size_t a, std::size_t b) {
    if (obs[a].z != obs[b].z) return obs[a].z < obs[b].z;
    if (obs[a].delta != obs[b].delta) return obs[a].delta;
    return a < b;
  });
  return order;
}

}  // namespace

CompetingRisksSample::CompetingRisksSample(std::vector<Observation> observations, int num_causes)
    : observations_(std::move(observations)), num_causes_(num_causes) {
  if (observations_.empty()) {
    throw stat_error(errc::empty_sample, "competing risks sample must be nonempty");
  }
  if (num_causes_ < 1) {
    throw stat_error(errc::domain, "number of causes must be at least 1");
  }
  for (const Observation& o : observations_) {
    if (!(o.z > 0.0) || !std::isfinite(o.z)) {
      throw stat_error(errc::domain, "observed times must be positive and finite");
    }
    if (o.delta) {
      if (o.cause < 1 || o.cause > num_causes_) {
        throw stat_error(errc::domain, "uncensored observation needs a cause in 1..K");
      }
    } else if (o.cause != 0) {
      throw stat_error(errc::domain, "censored observation must not carry a cause");
    }
  }
  order_ = canonical_order_of(observations_);
}

CompetingRisksSample CompetingRisksSample::with_inferred_causes(
    std::vector<Observation> observations) {
  int max_cause = 1;
  for (const Observation& o : observations) {
    max_cause = std::max(max_cause, o.cause);
  }
  return CompetingRisksSample(std::move(observations), max_cause);
}

CompetingRisksSample scale_times(const CompetingRisksSample& sample, double factor) {
  if (!(factor > 0.0)) {
    throw stat_error(errc::domain, "scale factor must be positive");
  }
  std::vector<Observation> scaled = sample.observations();
  for (Observation& o : scaled) {
    o.z *= factor;
  }
  return CompetingRisksSample(std::move(scaled), sample.num_causes());
}

CompetingRisksSample swap_censoring_roles(const CompetingRisksSample& sample) {
  std::vector<Observation> swapped;
  swapped.reserve(sample.size());
  for (const Observation& o : sample.observations()) {
    swapped.push_back(o.delta ? Observation::censored(o.z) : Observation::event(o.z, 1));
  }
  return CompetingRisksSample(std::move(swapped), 1);
}

}  // namespace tailcr
