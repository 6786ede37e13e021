#include "tailcr/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tailcr/errors.hpp"

namespace tailcr {

namespace {

void validate_breakpoints(const std::vector<double>& breakpoints,
                          const std::vector<double>& values) {
  if (breakpoints.size() != values.size()) {
    throw stat_error(errc::domain, "step function needs one value per breakpoint");
  }
  double prev = 0.0;
  for (double b : breakpoints) {
    if (!(b > prev) || !std::isfinite(b)) {
      throw stat_error(errc::domain, "step function breakpoints must be positive and strictly increasing");
    }
    prev = b;
  }
}

}  // namespace

StepFunction::StepFunction(double initial_value) : initial_value_(initial_value) {}

StepFunction::StepFunction(double initial_value, std::vector<double> breakpoints,
                           std::vector<double> values)
    : initial_value_(initial_value) {
  validate_breakpoints(breakpoints, values);
  breakpoints_.reserve(breakpoints.size());
  values_.reserve(values.size());
  double current = initial_value_;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (values[i] == current) {
      continue;  // not a jump
    }
    breakpoints_.push_back(breakpoints[i]);
    values_.push_back(values[i]);
    current = values[i];
  }
}

double StepFunction::operator()(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) {
    return initial_value_;
  }
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepFunction::eval_left(double t) const {
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) {
    return initial_value_;
  }
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepFunction::final_value() const {
  return values_.empty() ? initial_value_ : values_.back();
}

void StepFunction::Builder::add(double t, double value) {
  if (!breakpoints_.empty() && t == breakpoints_.back()) {
    values_.back() = value;  // several events at one time: keep the last state
    return;
  }
  if (!breakpoints_.empty() && t < breakpoints_.back()) {
    throw stat_error(errc::domain, "step function jumps must arrive in time order");
  }
  breakpoints_.push_back(t);
  values_.push_back(value);
}

StepFunction StepFunction::Builder::build() && {
  return StepFunction(initial_, std::move(breakpoints_), std::move(values_));
}

double subsurvival(const StepFunction& f, double t) {
  return f.final_value() - f(t);
}

}  // namespace tailcr
