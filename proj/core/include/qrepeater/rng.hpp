#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace qrep {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The 64-bit
// seed is the key; the 64-bit stream id and a 64-bit block counter form the
// 128-bit counter. Every (seed, stream) pair is an independent substream, so
// Monte Carlo episode i draws from stream i regardless of which worker runs it.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (index_ == 4) {
      const Counter ctr{static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32),
                        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32)};
      buffer_ = block(ctr, key_);
      ++block_;
      index_ = 0;
    }
    return buffer_[index_++];
  }

  // The raw bijection, exposed for known-answer tests.
  static Counter block(Counter ctr, Key key) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Counter buffer_{};
  int index_ = 4;
};

// Uniform double in (0, 1], 53 random bits.
template <class Engine>
double uniform_open_closed(Engine& eng) {
  const std::uint64_t hi = eng() >> 5;  // 27 bits
  const std::uint64_t lo = eng() >> 6;  // 26 bits
  const std::uint64_t bits = (hi << 26) | lo;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

template <class Engine>
bool bernoulli(Engine& eng, double p) {
  return uniform_open_closed(eng) <= p;
}

// Number of independent trials up to and including the first success.
template <class Engine>
std::int64_t geometric_trials(Engine& eng, double p) {
  if (p >= 1.0) return 1;
  const double u = uniform_open_closed(eng);
  const double k = std::floor(std::log(u) / std::log1p(-p));
  return 1 + static_cast<std::int64_t>(k);
}

}  // namespace qrep
