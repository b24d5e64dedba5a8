#include "qrepeater/oracle/mc_chain.hpp"

#include <algorithm>

#include "qrepeater/errors.hpp"

namespace qrep::oracle {

namespace {

class ChainSampler {
 public:
  ChainSampler(const ChainPlan& plan, Philox4x32& rng) : plan_(plan), rng_(rng) {}

  double trial(int level) {
    if (level == 0) return plan_.round_times[0];
    return wait_both(level - 1) + plan_.round_times[static_cast<std::size_t>(level)];
  }

  // Both sides retry level-h trials on a shared clock until each has succeeded.
  double wait_both(int level) {
    if (level == 0) {
      const double p = plan_.per_round_swap_prob[0];
      const auto g = std::max(geometric_trials(rng_, p), geometric_trials(rng_, p));
      return static_cast<double>(g) * plan_.round_times[0];
    }
    const double p = plan_.per_round_swap_prob[static_cast<std::size_t>(level)];
    bool left = false, right = false;
    double elapsed = 0.0;
    while (!(left && right)) {
      elapsed += trial(level);
      if (!left) left = bernoulli(rng_, p);
      if (!right) right = bernoulli(rng_, p);
    }
    return elapsed;
  }

  double episode() {
    const int J = plan_.rounds;
    double elapsed = 0.0;
    for (;;) {
      if (plan_.scheme == Scheme::SS) {
        elapsed += wait_both(J);
        if (bernoulli(rng_, plan_.coincidence_prob)) return elapsed;
      } else {
        elapsed += wait_both(J - 1);
        const bool swapped = bernoulli(rng_, plan_.per_round_swap_prob[static_cast<std::size_t>(J)]);
        if (swapped && bernoulli(rng_, plan_.coincidence_prob)) return elapsed;
      }
    }
  }

 private:
  const ChainPlan& plan_;
  Philox4x32& rng_;
};

}  // namespace

MCEstimate mc_chain(const ChainPlan& plan, const McOptions& options) {
  if (options.episodes < 1) throw ValidationError("episodes >= 1 required");
  if (plan.rounds < 1 || plan.per_round_swap_prob.size() != static_cast<std::size_t>(plan.rounds) + 1 ||
      plan.round_times.size() != plan.per_round_swap_prob.size()) {
    throw ValidationError("malformed chain plan");
  }
  for (double p : plan.per_round_swap_prob) {
    if (!(p > 0.0 && p <= 1.0)) throw ValidationError("chain plan probabilities must lie in (0, 1]");
  }
  if (!(plan.coincidence_prob > 0.0 && plan.coincidence_prob <= 1.0)) {
    throw ValidationError("coincidence probability must lie in (0, 1]");
  }
  return run_episodes(options, [&](std::uint64_t, Philox4x32& rng) {
    ChainSampler s(plan, rng);
    return EpisodeSample{s.episode(), 1.0};
  });
}

MCEstimate mc_chain(Scheme scheme, int rounds, const SimParams& params, const McOptions& options) {
  if (rounds != 1 && rounds != 2) {
    throw ValidationError("mc_chain supports J = 1 or 2 (got " + std::to_string(rounds) + ")");
  }
  return mc_chain(plan_chain(scheme, rounds, params), options);
}

MCEstimate mc_max_geometric(double p, const McOptions& options) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("p must lie in (0, 1]");
  if (options.episodes < 1) throw ValidationError("episodes >= 1 required");
  return run_episodes(options, [p](std::uint64_t, Philox4x32& rng) {
    const auto g = std::max(geometric_trials(rng, p), geometric_trials(rng, p));
    return EpisodeSample{static_cast<double>(g), 1.0};
  });
}

}  // namespace qrep::oracle
