#ifndef TAILCR_SURVIVAL_HPP
#define TAILCR_SURVIVAL_HPP

#include <functional>

#include "tailcr/sample.hpp"
#include "tailcr/step_function.hpp"

namespace tailcr {

/// Rule deciding which observations count as events for a product-limit
/// estimator.
using EventSelector = std::function<bool(const Observation&)>;

/// Censoring events (1 - delta): selector for the Kaplan-Meier estimator of
/// the censoring survival G-bar.
EventSelector select_censorings();

/// All-cause failures (delta): selector for the Kaplan-Meier estimator of
/// the lifetime survival.
EventSelector select_events();

/// Cause-k failures (delta * I{cause = k}), the modified indicator used by
/// the single-risk competitor estimators.
EventSelector select_cause(int cause);

/// Complement of select_cause(k): treats other-cause failures and censorings
/// alike as censoring events.
EventSelector select_not_cause(int cause);

/// Kaplan-Meier product-limit survival estimate with a selectable event
/// indicator: prod_{Z_(i) <= t} (1 - d_i / (n - i + 1)) over the canonical
/// order, d_i = selector(obs_(i)). Right-continuous, starts at 1, holds its
/// last value after the largest observation.
StepFunction km_survival(const CompetingRisksSample& sample, const EventSelector& selector);

/// Aalen-Johansen estimate of the cause-k cumulative incidence:
/// F_n^(k)(t) = sum_{Z_i <= t} delta_i I{cause_i = k} / (n * g_bar(Z_i-)).
/// `g_bar` must be the censoring Kaplan-Meier of the same sample. Throws
/// errc::degenerate_weight if g_bar vanishes (from the left) at a needed
/// jump, which signals a pathological censoring pattern at the top of the
/// sample.
StepFunction aalen_johansen_incidence(const CompetingRisksSample& sample, int cause,
                                      const StepFunction& g_bar);

}  // namespace tailcr

#endif  // TAILCR_SURVIVAL_HPP
