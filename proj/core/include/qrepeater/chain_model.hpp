#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrepeater/mixture.hpp"
#include "qrepeater/params.hpp"

namespace qrep {

// Expected number of parallel trials until two independent geometric(p)
// processes have both succeeded: (3 - 2p) / ((2 - p) p) = E[max(G1, G2)].
double n_ex(double p);

// State heralded on a fresh elementary link:
// SS {c1: 1}, TT {c11: 1}, ST {c11: 1/2, c20: 1/2}.
Mixture initial_state(Scheme scheme);

// One entanglement-swapping round on two copies of `state`.
// 0 < eta <= 1. Throws ValidationError for illegal or mixed-stage input.
SwapOutcome swap_step(Scheme scheme, const Mixture& state, double eta);

// Probability that the end-node coincidence succeeds on `state`:
// SS (alpha eta)^2 / 2 over the two parallel chains, ST eta^2 c11^2, TT eta^2.
double coincidence_prob(Scheme scheme, const Mixture& state, double eta);

// Round-independent ST coefficients reached after the second swap, from the
// first post-swap mixture (r = c1 / c11):
//   c11 = 1 / (1 + r/2)^2,  c1 = r / (1 + r/2)^2,  c0 = (r / (2 + r))^2.
Mixture st_fixed_point(const Mixture& first_swap_state);

// A chain of 2^J elementary links of length L.
struct ChainPlan {
  Scheme scheme = Scheme::SS;
  int rounds = 1;  // J
  double link_length_km = 0.0;
  std::vector<double> round_times;          // t^(0..J): t0 = N dt + L/c, t^(j) = 2^(j-1) L / c
  std::vector<double> per_round_swap_prob;  // p^(0..J); p^(0) is the elementary herald probability
  std::vector<Mixture> states;              // link state after rounds 0..J
  double coincidence_prob = 0.0;            // p_ps on the final state
};

// Builds the per-round probabilities for J rounds using params.link_length_km
// as the elementary-link length. Throws UnreachableError naming the first
// round whose probability is zero.
ChainPlan plan_chain(Scheme scheme, int rounds, const SimParams& params);

// Expected time to one end-to-end coincidence.
//   ST/TT: sum_{j=0}^{J-1} t^(j) / (p^(J) p_ps) prod_{h=j}^{J-1} n_ex(p^(h))
//   SS:    sum_{j=0}^{J}   t^(j) / p_ps        prod_{h=j}^{J}   n_ex(p^(h))
double total_time(const ChainPlan& plan);
double total_time(Scheme scheme, int rounds, const SimParams& params);

struct LinkCountEntry {
  int rounds = 0;
  double link_length_km = 0.0;
  double total_time = 0.0;  // seconds; 0 when failed
  double rate = 0.0;        // 1 / total_time; 0 when failed
  std::optional<std::string> error;
};

struct LinkOptimization {
  int best_rounds = 0;
  double best_rate = 0.0;
  std::vector<LinkCountEntry> table;
};

// Evaluates every J in `rounds_range` with L = total_distance / 2^J and picks
// the best rate, ties going to the smaller J. Rounds that fail are kept in the
// table with their error; throws if all fail.
LinkOptimization optimize_links(Scheme scheme, double total_distance_km, std::span<const int> rounds_range,
                                const SimParams& params);

}  // namespace qrep
