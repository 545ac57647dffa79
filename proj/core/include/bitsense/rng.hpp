#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bitsense {

/// Identifies one reproducible random stream.
///
/// All sampling in the library is a pure function of a SeedSpec and a
/// position counter, so independent trials can be run from any thread
/// without sharing generator state.
struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// SplitMix64 finalizer (Steele, Lea & Flood 2014). Bijective on 64 bits.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Child seed for sub-stream `index` of `base`.
///
///   child.base_seed = mix(mix(base.base_seed ^ mix(base.stream_id + gamma)) ^ index)
///   child.stream_id = index
///
/// The child is injective in `index` because `stream_id` carries it verbatim;
/// the mixed base_seed decorrelates children of different parents.
SeedSpec derive_seed(const SeedSpec& base, std::uint64_t index) noexcept;

/// Counter-based random stream.
///
/// Word `i` of the stream is `splitmix64_mix(key + (i + 1) * gamma)` where
/// `key` is a mix of the SeedSpec. Normals use the Box-Muller transform
/// (cosine branch first, then sine branch) over 53-bit uniforms in (0, 1].
class RandomStream {
 public:
  explicit RandomStream(const SeedSpec& seed) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on (0, 1] with 53-bit resolution.
  double next_uniform() noexcept;
  double next_normal() noexcept;
  /// Uniform integer on [0, bound) by rejection; bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// `count` i.i.d. standard normal draws from the stream identified by `seed`.
std::vector<double> sample_standard_normal(const SeedSpec& seed, std::size_t count);

}  // namespace bitsense
