#pragma once

// Counter-based 64-bit generator.
//
// A stream is keyed by (master_seed, stream_id):
//   key    = mix(master_seed ^ mix(stream_id + G))
//   word_i = mix(key + (i + 1) * G)
// with G = 0x9E3779B97F4A7C15 and mix the SplitMix64 finalizer. Word i can
// be computed directly, so streams are reproducible without shared state.

#include <cstdint>

namespace classprob {

std::uint64_t splitmix_mix(std::uint64_t z);

class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  /// Word at an absolute position, independent of the cursor.
  std::uint64_t word_at(std::uint64_t index) const;
  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Uniform integer in [0, bound), bound >= 1, without modulo bias.
  std::uint64_t below(std::uint64_t bound);

  /// Independent stream derived from this one's key and an index.
  RngStream child(std::uint64_t index) const;

private:
  RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t key) : seed_(seed), stream_(stream), key_(key) {}

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace classprob
