#include "qrepeater/link_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qrepeater/binomial.hpp"
#include "qrepeater/errors.hpp"

namespace qrep {

namespace {

void require_even_modes(const SimParams& p) {
  if (p.modes() % 2 != 0) {
    throw ValidationError("ST requires N*M even (got N*M = " + std::to_string(p.modes()) + ")");
  }
}

double per_mode_prob(Scheme scheme, const SimParams& p) {
  return scheme == Scheme::TT ? pair_herald_prob(p) : single_herald_prob(p);
}

template <class Engine>
std::int64_t sample_binomial(Engine& rng, std::int64_t n, double q) {
  if (n <= 0 || q <= 0.0) return 0;
  if (q >= 1.0) return n;
  std::binomial_distribution<std::int64_t> dist(n, q);
  return dist(rng);
}

// K ~ Binomial(n, q) conditioned on K >= 1: draw the first heralding mode
// from its truncated geometric law, then the remaining modes freely.
template <class Engine>
std::int64_t sample_heralds_given_any(Engine& rng, std::int64_t n, double q, double p_any) {
  std::int64_t first = 1;
  if (q < 1.0) {
    const double u = uniform_open_closed(rng);
    const double j = std::ceil(std::log1p(-u * p_any) / std::log1p(-q));
    first = std::clamp<std::int64_t>(static_cast<std::int64_t>(j), 1, n);
  }
  return 1 + sample_binomial(rng, n - first, q);
}

}  // namespace

double expected_heralds(Scheme scheme, const SimParams& params) {
  validate(params);
  const std::int64_t nm = params.modes();
  switch (scheme) {
    case Scheme::SS:
      return static_cast<double>(nm) * single_herald_prob(params);
    case Scheme::TT:
      return static_cast<double>(nm) * pair_herald_prob(params);
    case Scheme::ST: {
      require_even_modes(params);
      const auto pmf = binomial_pmf(nm, single_herald_prob(params));
      const std::int64_t half = nm / 2;
      double sum = 0.0;
      for (std::int64_t k = 0; k <= half - 1; ++k) {
        sum += static_cast<double>(k) *
               (pmf[static_cast<std::size_t>(2 * k)] + pmf[static_cast<std::size_t>(2 * k + 1)]);
      }
      sum += static_cast<double>(half) * pmf[static_cast<std::size_t>(nm)];
      return sum;
    }
  }
  return 0.0;
}

double herald_prob(Scheme scheme, const SimParams& params) {
  validate(params);
  const std::int64_t nm = params.modes();
  switch (scheme) {
    case Scheme::SS: return binomial_at_least_one(nm, single_herald_prob(params));
    case Scheme::ST: return binomial_at_least_two(nm, single_herald_prob(params));
    case Scheme::TT: return binomial_at_least_one(nm, pair_herald_prob(params));
  }
  return 0.0;
}

HeraldStats herald_stats(Scheme scheme, const SimParams& params) {
  HeraldStats s;
  s.scheme = scheme;
  s.expected_heralds = expected_heralds(scheme, params);
  s.herald_prob = herald_prob(scheme, params);
  s.per_mode_prob = per_mode_prob(scheme, params);
  return s;
}

double elementary_rate(Scheme scheme, const SimParams& params) {
  if (scheme == Scheme::SS) {
    throw ValidationError("SS rate requires Monte Carlo (use mc_elementary)");
  }
  const double eta = effective_eta(params);
  const double t0 = elementary_trial_time(params);
  const double expected = expected_heralds(scheme, params);
  if (scheme == Scheme::ST) return eta * eta * expected / (2.0 * t0);
  return eta * eta * expected / t0;
}

TrialOutcome simulate_elementary_episode(Scheme scheme, const SimParams& params, Philox4x32& rng) {
  const double eta = effective_eta(params);
  const std::int64_t nm = params.modes();
  TrialOutcome out;
  switch (scheme) {
    case Scheme::SS: {
      const double q = single_herald_prob(params);
      const double p_any = binomial_at_least_one(nm, q);
      const std::int64_t k_a = geometric_trials(rng, p_any);
      const std::int64_t k_b = geometric_trials(rng, p_any);
      out.heralds_channel_a = sample_heralds_given_any(rng, nm, q, p_any);
      out.heralds_channel_b = sample_heralds_given_any(rng, nm, q, p_any);
      out.attempts = std::min(out.heralds_channel_a, out.heralds_channel_b);
      out.successes = sample_binomial(rng, out.attempts, eta * eta / 2.0);
      out.trials_elapsed = std::max(k_a, k_b);
      break;
    }
    case Scheme::ST: {
      out.heralds_channel_a = sample_binomial(rng, nm, single_herald_prob(params));
      out.attempts = out.heralds_channel_a / 2;
      out.successes = sample_binomial(rng, out.attempts, eta * eta / 2.0);
      out.trials_elapsed = 1;
      break;
    }
    case Scheme::TT: {
      out.heralds_channel_a = sample_binomial(rng, nm, pair_herald_prob(params));
      out.attempts = out.heralds_channel_a;
      out.successes = sample_binomial(rng, out.attempts, eta * eta);
      out.trials_elapsed = 1;
      break;
    }
  }
  return out;
}

MCEstimate mc_elementary(Scheme scheme, const SimParams& params, const McOptions& options) {
  validate(params);
  if (options.episodes < 1) throw ValidationError("episodes >= 1 required");
  if (scheme == Scheme::SS && herald_prob(Scheme::SS, params) <= 0.0) {
    throw UnreachableError(0, "unreachable configuration: SS heralding probability is 0");
  }
  const double t0 = elementary_trial_time(params);
  return run_episodes(options, [&](std::uint64_t, Philox4x32& rng) {
    const TrialOutcome o = simulate_elementary_episode(scheme, params, rng);
    return EpisodeSample{static_cast<double>(o.successes),
                         static_cast<double>(o.trials_elapsed) * t0};
  });
}

}  // namespace qrep
