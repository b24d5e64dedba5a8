#pragma once

#include <cstdint>

#include "qrepeater/monte_carlo.hpp"
#include "qrepeater/params.hpp"

namespace qrep {

struct HeraldStats {
  Scheme scheme = Scheme::SS;
  double expected_heralds = 0.0;  // E(K^(0)) per trial
  double herald_prob = 0.0;       // p^(0): at least one usable entanglement per trial
  double per_mode_prob = 0.0;     // q for SS/ST, two-photon probability for TT
};

// Counts recorded for one Monte Carlo episode of the elementary-link flow.
struct TrialOutcome {
  std::int64_t heralds_channel_a = 0;
  std::int64_t heralds_channel_b = 0;  // SS only
  std::int64_t attempts = 0;
  std::int64_t successes = 0;
  std::int64_t trials_elapsed = 0;
};

// Expected heralded entanglements per trial.
//   SS: 2 N M p_tps eta_det eta_att(L/2)
//   TT: (N M / 2) (p_tps eta_det eta_att(L/2))^2
//   ST: sum_k k (P_h(2k) + P_h(2k+1)) + (NM/2) P_h(NM), i.e. E[floor(K_SS / 2)]
// ST requires N*M even.
double expected_heralds(Scheme scheme, const SimParams& params);

// p^(0) of the elementary link: SS at least one single-photon herald, ST at
// least two (so a pair can be formed), TT at least one two-photon herald.
double herald_prob(Scheme scheme, const SimParams& params);

HeraldStats herald_stats(Scheme scheme, const SimParams& params);

// Closed-form coincidence rate for ST and TT (1/s):
//   ST: eta^2 E(K_ST) / (2 t0),  TT: eta^2 E(K_TT) / t0,  t0 = N dt + L/c.
// SS has no closed form here; use mc_elementary.
double elementary_rate(Scheme scheme, const SimParams& params);

// Simulates one episode of the elementary-link flow.
//   SS: two channels retry in parallel until both herald; min(K, K') coincidence
//       attempts, each succeeding with eta^2/2; the episode lasts max(k, k') trials.
//   ST: one trial; floor(K_SS / 2) attempts at eta^2/2.
//   TT: one trial; K_TT attempts at eta^2.
TrialOutcome simulate_elementary_episode(Scheme scheme, const SimParams& params, Philox4x32& rng);

// Coincidence-rate estimate, total successes / total elapsed time.
// Bit-identical for identical (scheme, params, seed, episodes) at any worker count.
MCEstimate mc_elementary(Scheme scheme, const SimParams& params, const McOptions& options);

}  // namespace qrep
