#pragma once

#include <cstdint>
#include <random>

namespace ordstat {

/// SplitMix64 finalizer; used to turn (seed, stream) coordinates into
/// well-separated engine seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t combine_keys(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

/// Random stream identified by (master seed, stream id).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard, and all variate transforms are done here rather than through
/// std::*_distribution, so a given (seed, stream) produces the same doubles
/// on every conforming platform. Instances are cheap to derive and must not
/// be shared between threads.
class Rng {
public:
  Rng(std::uint64_t master_seed, std::uint64_t stream_id)
      : seed_(master_seed), stream_(stream_id),
        engine_(combine_keys(master_seed, stream_id)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Independent child stream keyed by `key`; does not advance this stream.
  Rng substream(std::uint64_t key) const {
    return Rng(seed_, combine_keys(stream_, key));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal deviate (Box-Muller, one value per call).
  double normal();

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

} // namespace ordstat
