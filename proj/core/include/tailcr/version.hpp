#ifndef TAILCR_VERSION_HPP
#define TAILCR_VERSION_HPP

namespace tailcr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tailcr

#endif  // TAILCR_VERSION_HPP
