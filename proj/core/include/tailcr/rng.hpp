#ifndef TAILCR_RNG_HPP
#define TAILCR_RNG_HPP

#include <cstdint>

namespace tailcr {

/// SplitMix64 generator (Vigna's fixed-increment variant of Java's
/// SplittableRandom). One 64-bit word of state, fully specified output, so
/// sequences are bitwise reproducible across platforms and thread counts.
/// Parallel replications each own a stream derived from (master seed,
/// stream index); streams are never shared between threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Independent-looking stream for one replication of a seeded experiment.
  static SplitMix64 for_stream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next();

  /// Uniform draw strictly inside (0, 1): ((next() >> 11) + 0.5) * 2^-53.
  double next_uniform();

 private:
  std::uint64_t state_;
};

}  // namespace tailcr

#endif  // TAILCR_RNG_HPP
