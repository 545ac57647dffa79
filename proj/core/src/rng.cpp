#include "bitsense/rng.hpp"

#include <cmath>
#include <numbers>

namespace bitsense {

SeedSpec derive_seed(const SeedSpec& base, std::uint64_t index) noexcept {
  const std::uint64_t parent =
      splitmix64_mix(base.base_seed ^ splitmix64_mix(base.stream_id + kGoldenGamma));
  return SeedSpec{splitmix64_mix(parent ^ index), index};
}

RandomStream::RandomStream(const SeedSpec& seed) noexcept
    : key_(splitmix64_mix(seed.base_seed ^ splitmix64_mix(seed.stream_id ^ 0x6a09e667f3bcc909ULL))) {}

std::uint64_t RandomStream::next_u64() noexcept {
  ++counter_;
  return splitmix64_mix(key_ + counter_ * kGoldenGamma);
}

double RandomStream::next_uniform() noexcept {
  // (bits + 1) / 2^53 lies in (0, 1], so log() below never sees zero.
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::next_normal() noexcept {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::uint64_t RandomStream::next_below(std::uint64_t bound) noexcept {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t word = next_u64();
  while (word >= limit) word = next_u64();
  return word % bound;
}

std::vector<double> sample_standard_normal(const SeedSpec& seed, std::size_t count) {
  RandomStream stream(seed);
  std::vector<double> out(count);
  for (auto& z : out) z = stream.next_normal();
  return out;
}

}  // namespace bitsense
