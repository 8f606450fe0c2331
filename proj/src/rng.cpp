#include "classprob/rng.hpp"

#include "classprob/errors.hpp"

namespace classprob {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : seed_(master_seed), stream_(stream_id), key_(splitmix_mix(master_seed ^ splitmix_mix(stream_id + kGolden))) {}

std::uint64_t RngStream::word_at(std::uint64_t index) const { return splitmix_mix(key_ + (index + 1) * kGolden); }

std::uint64_t RngStream::next() { return word_at(counter_++); }

double RngStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double RngStream::uniform_open() {
  return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("bound must be positive");
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t w = next();
    const unsigned __int128 m = static_cast<unsigned __int128>(w) * bound;
    if (static_cast<std::uint64_t>(m) >= limit) return static_cast<std::uint64_t>(m >> 64);
  }
}

RngStream RngStream::child(std::uint64_t index) const {
  const std::uint64_t key = splitmix_mix(key_ ^ splitmix_mix(~index * kGolden + 0x632BE59BD9B4E019ULL));
  return RngStream(seed_, stream_, key);
}

}  // namespace classprob
