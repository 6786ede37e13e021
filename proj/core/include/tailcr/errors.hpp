#ifndef TAILCR_ERRORS_HPP
#define TAILCR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tailcr {

/// Failure kinds raised by the estimation and simulation layers. The CLI
/// maps `invalid_config` to the input-error exit code and everything else
/// to the statistical-error exit code.
enum class errc {
  domain,               ///< argument outside its mathematical domain
  empty_sample,         ///< estimator called on an empty sample
  no_exceedance,        ///< no qualifying observation above the threshold
  degenerate_weight,    ///< product-limit weight hit zero where a positive value is required
  strong_censoring,     ///< gamma_k >= gamma_c, the CLT hypothesis fails
  extrapolation_order,  ///< requested exceedance probability not beyond the data range
  invalid_config,       ///< malformed scenario or sampler configuration
};

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::domain: return "domain";
    case errc::empty_sample: return "empty-sample";
    case errc::no_exceedance: return "no-exceedance";
    case errc::degenerate_weight: return "degenerate-weight";
    case errc::strong_censoring: return "strong-censoring";
    case errc::extrapolation_order: return "extrapolation-order";
    case errc::invalid_config: return "invalid-config";
  }
  return "unknown";
}

class stat_error : public std::runtime_error {
 public:
  stat_error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// File and stream level failures (CSV/JSON parsing, unreadable paths).
/// Messages carry "<source>:<line>:" prefixes where a line is known.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace tailcr

#endif  // TAILCR_ERRORS_HPP
