#include "qrepeater/chain_model.hpp"

#include <cmath>

#include "qrepeater/errors.hpp"
#include "qrepeater/link_model.hpp"

namespace qrep {

namespace {

void check_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw ValidationError("eta must lie in (0, 1] (got " + std::to_string(eta) + ")");
  }
}

void check_scheme(Scheme scheme, const Mixture& state) {
  if (state.scheme != scheme) {
    throw ValidationError("mixture " + describe(state) + " does not belong to scheme " +
                          std::string(to_string(scheme)));
  }
  check_mixture(state);
}

}  // namespace

double n_ex(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ValidationError("n_ex requires 0 < p <= 1 (got " + std::to_string(p) + ")");
  }
  return (3.0 - 2.0 * p) / ((2.0 - p) * p);
}

Mixture initial_state(Scheme scheme) {
  switch (scheme) {
    case Scheme::SS: return make_ss(1.0);
    case Scheme::ST: return make_st_initial(0.5, 0.5);
    case Scheme::TT: return make_tt();
  }
  return make_tt();
}

SwapOutcome swap_step(Scheme scheme, const Mixture& state, double eta) {
  check_scheme(scheme, state);
  check_eta(eta);
  return swap_formula(state, eta);
}

double coincidence_prob(Scheme scheme, const Mixture& state, double eta) {
  check_scheme(scheme, state);
  check_eta(eta);
  switch (scheme) {
    case Scheme::SS: {
      const double x = state.c1 * eta;
      return x * x / 2.0;
    }
    case Scheme::ST: return eta * eta * state.c11 * state.c11;
    case Scheme::TT: return eta * eta;
  }
  return 0.0;
}

Mixture st_fixed_point(const Mixture& first_swap_state) {
  if (first_swap_state.scheme != Scheme::ST || first_swap_state.stage != Stage::PostSwap) {
    throw ValidationError("st_fixed_point expects an ST post-swap mixture, got " +
                          describe(first_swap_state));
  }
  check_mixture(first_swap_state);
  if (first_swap_state.c11 == 0.0) {
    throw ValidationError("st_fixed_point undefined for c11 = 0");
  }
  const double r = first_swap_state.c1 / first_swap_state.c11;
  const double denom = (1.0 + r / 2.0) * (1.0 + r / 2.0);
  const double vac = r / (2.0 + r);
  return make_st_post_swap(1.0 / denom, r / denom, vac * vac);
}

ChainPlan plan_chain(Scheme scheme, int rounds, const SimParams& params) {
  if (rounds < 1) throw ValidationError("J >= 1 required (got " + std::to_string(rounds) + ")");
  validate(params);
  const double eta = effective_eta(params);
  if (!(eta > 0.0)) throw UnreachableError(1, "unreachable configuration: eta = 0, no swap can succeed");

  ChainPlan plan;
  plan.scheme = scheme;
  plan.rounds = rounds;
  plan.link_length_km = params.link_length_km;

  const double hop = km_to_m(params.link_length_km) / params.light_speed_m_per_s;
  plan.round_times.push_back(elementary_trial_time(params));
  for (int j = 1; j <= rounds; ++j) plan.round_times.push_back(std::ldexp(hop, j - 1));

  const double p0 = herald_prob(scheme, params);
  if (!(p0 > 0.0)) {
    throw UnreachableError(0, "unreachable configuration: p^(0) = 0 (no elementary heralds)");
  }
  plan.per_round_swap_prob.push_back(p0);
  plan.states.push_back(initial_state(scheme));

  for (int j = 1; j <= rounds; ++j) {
    const SwapOutcome step = swap_step(scheme, plan.states.back(), eta);
    if (!(step.success_prob > 0.0) || !step.state) {
      throw UnreachableError(j, "unreachable configuration: p^(" + std::to_string(j) + ") = 0");
    }
    plan.per_round_swap_prob.push_back(step.success_prob);
    plan.states.push_back(*step.state);
  }

  plan.coincidence_prob = coincidence_prob(scheme, plan.states.back(), eta);
  if (!(plan.coincidence_prob > 0.0)) {
    throw UnreachableError(rounds, "unreachable configuration: end-node coincidence probability is 0");
  }
  return plan;
}

double total_time(const ChainPlan& plan) {
  const int J = plan.rounds;
  const auto& p = plan.per_round_swap_prob;
  const auto& t = plan.round_times;
  // SS runs two parallel chains, so the last round also waits for both.
  const bool dual = plan.scheme == Scheme::SS;
  const int last_j = dual ? J : J - 1;
  const double final_factor = dual ? 1.0 / plan.coincidence_prob : 1.0 / (p[J] * plan.coincidence_prob);

  double total = 0.0;
  for (int j = 0; j <= last_j; ++j) {
    double prod = 1.0;
    for (int h = j; h <= last_j; ++h) prod *= n_ex(p[h]);
    total += t[j] * final_factor * prod;
  }
  return total;
}

double total_time(Scheme scheme, int rounds, const SimParams& params) {
  return total_time(plan_chain(scheme, rounds, params));
}

LinkOptimization optimize_links(Scheme scheme, double total_distance_km, std::span<const int> rounds_range,
                                const SimParams& params) {
  if (rounds_range.empty()) throw ValidationError("J range must not be empty");
  if (!(total_distance_km >= 0.0)) throw ValidationError("total distance must be >= 0");
  for (int j : rounds_range) {
    if (j < 1) throw ValidationError("every J must be >= 1 (got " + std::to_string(j) + ")");
  }

  LinkOptimization result;
  for (int j : rounds_range) {
    LinkCountEntry entry;
    entry.rounds = j;
    entry.link_length_km = std::ldexp(total_distance_km, -j);
    SimParams link = params;
    link.link_length_km = entry.link_length_km;
    try {
      entry.total_time = total_time(scheme, j, link);
      entry.rate = 1.0 / entry.total_time;
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    if (!entry.error &&
        (result.best_rounds == 0 || entry.rate > result.best_rate ||
         (entry.rate == result.best_rate && j < result.best_rounds))) {
      result.best_rounds = j;
      result.best_rate = entry.rate;
    }
    result.table.push_back(std::move(entry));
  }
  if (result.best_rounds == 0) {
    std::string msg = "no J in range is reachable";
    if (!result.table.empty() && result.table.front().error) msg += ": " + *result.table.front().error;
    throw UnreachableError(-1, msg);
  }
  return result;
}

}  // namespace qrep
