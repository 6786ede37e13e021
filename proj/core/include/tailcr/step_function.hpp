#ifndef TAILCR_STEP_FUNCTION_HPP
#define TAILCR_STEP_FUNCTION_HPP

#include <cstddef>
#include <vector>

namespace tailcr {

/// Right-continuous piecewise-constant function with exact left limits.
///
/// Only jump points are stored; evaluation is a binary search over the
/// breakpoints. Instances are immutable after construction and safe to share
/// across threads. This is the carrier for every product-limit estimate in
/// the library (censoring Kaplan-Meier, cause-specific incidences, ...).
class StepFunction {
 public:
  /// `breakpoints` must be strictly increasing and positive; `values[i]` is
  /// the value on [breakpoints[i], breakpoints[i+1]). Entries whose value
  /// repeats the running value are dropped.
  StepFunction(double initial_value, std::vector<double> breakpoints,
               std::vector<double> values);

  /// Constant function with no jumps.
  explicit StepFunction(double initial_value);

  /// f(t), right-continuous.
  double operator()(double t) const;

  /// lim_{s -> t-} f(s): the value held on [previous breakpoint, t).
  double eval_left(double t) const;

  /// Value held after the last breakpoint (f at +infinity).
  double final_value() const;

  double initial_value() const { return initial_value_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t num_jumps() const { return breakpoints_.size(); }

  /// Incremental constructor used by the estimators: times must arrive in
  /// nondecreasing order, and a repeated time overwrites the pending value
  /// (several events at one time collapse into a single jump).
  class Builder {
   public:
    explicit Builder(double initial_value) : initial_(initial_value) {}
    void add(double t, double value);
    StepFunction build() &&;

   private:
    double initial_;
    std::vector<double> breakpoints_;
    std::vector<double> values_;
  };

 private:
  double initial_value_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// For a nondecreasing step function f (a cumulative incidence), the mass
/// strictly beyond t: f(inf) - f(t).
double subsurvival(const StepFunction& f, double t);

}  // namespace tailcr

#endif  // TAILCR_STEP_FUNCTION_HPP
