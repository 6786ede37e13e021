#ifndef TAILCR_SAMPLE_HPP
#define TAILCR_SAMPLE_HPP

#include <cstddef>
#include <vector>

namespace tailcr {

/// One subject: observed time z = min(lifetime, censoring time), the event
/// indicator delta, and the failure cause (1..K) which is observed exactly
/// when the subject is uncensored. A censored subject carries cause 0.
struct Observation {
  double z = 0.0;
  bool delta = false;
  int cause = 0;

  static Observation event(double z, int cause) { return {z, true, cause}; }
  static Observation censored(double z) { return {z, false, 0}; }

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// An immutable competing-risks sample together with its canonical order.
///
/// The canonical order sorts by observed time; at tied times uncensored
/// observations come first, and remaining ties keep input order. All
/// product-limit risk sets and order statistics in this library are defined
/// against this order, which makes every estimator deterministic and
/// invariant to permutations of the input.
class CompetingRisksSample {
 public:
  /// Validates: nonempty, z > 0 and finite, cause in 1..num_causes exactly
  /// when delta is set, num_causes >= 1.
  CompetingRisksSample(std::vector<Observation> observations, int num_causes);

  /// Convenience: num_causes = max cause present (1 when fully censored).
  static CompetingRisksSample with_inferred_causes(std::vector<Observation> observations);

  std::size_t size() const { return observations_.size(); }
  int num_causes() const { return num_causes_; }
  const std::vector<Observation>& observations() const { return observations_; }

  /// Observation of canonical rank r, r = 0 (smallest) .. size()-1.
  const Observation& ordered(std::size_t rank) const { return observations_[order_[rank]]; }

  /// Order statistic Z_(i), 1-based as in the usual notation.
  double order_statistic(std::size_t i) const { return observations_[order_[i - 1]].z; }

  const std::vector<std::size_t>& canonical_order() const { return order_; }

 private:
  std::vector<Observation> observations_;
  int num_causes_;
  std::vector<std::size_t> order_;
};

/// Same sample with every observed time multiplied by factor > 0.
CompetingRisksSample scale_times(const CompetingRisksSample& sample, double factor);

/// The sample seen from the censoring side: delta flipped, every censoring
/// event relabelled as a single cause-1 failure. Feeding this into the
/// single-risk estimators yields censoring-law tail estimates.
CompetingRisksSample swap_censoring_roles(const CompetingRisksSample& sample);

}  // namespace tailcr

#endif  // TAILCR_SAMPLE_HPP
