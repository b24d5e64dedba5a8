#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "qrepeater/rng.hpp"

namespace qrep {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t episodes = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const MCEstimate&, const MCEstimate&) = default;
};

struct McOptions {
  std::uint64_t episodes = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0: one per hardware thread
};

// One episode's contribution to a ratio estimate sum(reward) / sum(duration).
// Plain averages use duration = 1.
struct EpisodeSample {
  double reward = 0.0;
  double duration = 1.0;
};

// Accumulates the sums needed for a ratio estimator and its delta-method
// standard error. When every duration is equal this reduces to the sample
// mean and sample std / sqrt(n).
class RatioAccumulator {
 public:
  void add(EpisodeSample s) {
    ++n_;
    sr_ += s.reward;
    sd_ += s.duration;
    srr_ += s.reward * s.reward;
    srd_ += s.reward * s.duration;
    sdd_ += s.duration * s.duration;
  }

  void merge(const RatioAccumulator& o) {
    n_ += o.n_;
    sr_ += o.sr_;
    sd_ += o.sd_;
    srr_ += o.srr_;
    srd_ += o.srd_;
    sdd_ += o.sdd_;
  }

  std::uint64_t count() const { return n_; }

  MCEstimate estimate(std::uint64_t seed) const {
    MCEstimate e;
    e.episodes = n_;
    e.seed = seed;
    if (n_ == 0 || sd_ == 0.0) return e;
    const double n = static_cast<double>(n_);
    const double ratio = sr_ / sd_;
    e.mean = ratio;
    if (n_ > 1) {
      // sum (r_i - ratio * d_i)^2
      const double ss = std::max(0.0, srr_ - 2.0 * ratio * srd_ + ratio * ratio * sdd_);
      const double mean_d = sd_ / n;
      e.std_error = std::sqrt(ss / (n * (n - 1.0))) / mean_d;
    }
    return e;
  }

 private:
  std::uint64_t n_ = 0;
  double sr_ = 0.0, sd_ = 0.0, srr_ = 0.0, srd_ = 0.0, sdd_ = 0.0;
};

// Episodes are reduced in fixed-size chunks that are merged in index order,
// so the floating-point summation order never depends on the worker count.
inline constexpr std::uint64_t kEpisodeChunk = 4096;

// Runs `episode(i, rng)` for i in [0, episodes) where rng is the Philox
// substream (seed, i), and returns the ratio estimate. `episode` must be
// callable concurrently.
template <class EpisodeFn>
MCEstimate run_episodes(const McOptions& opt, EpisodeFn&& episode) {
  const std::uint64_t chunks = (opt.episodes + kEpisodeChunk - 1) / kEpisodeChunk;
  std::vector<RatioAccumulator> partial(chunks);

  unsigned workers = opt.workers != 0 ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(chunks, 1)));

  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t begin = c * kEpisodeChunk;
      const std::uint64_t end = std::min(opt.episodes, begin + kEpisodeChunk);
      RatioAccumulator acc;
      for (std::uint64_t i = begin; i < end; ++i) {
        Philox4x32 rng(opt.seed, i);
        acc.add(episode(i, rng));
      }
      partial[c] = acc;
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  RatioAccumulator total;
  for (const auto& p : partial) total.merge(p);
  return total.estimate(opt.seed);
}

}  // namespace qrep
