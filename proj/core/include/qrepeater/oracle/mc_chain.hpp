#pragma once

#include "qrepeater/chain_model.hpp"
#include "qrepeater/monte_carlo.hpp"

namespace qrep::oracle {

// Simulates the waiting-time process behind total_time and returns the mean
// elapsed time (seconds) until one end-to-end coincidence.
//   level-0 trial: lasts t^(0), succeeds with p^(0)
//   level-h trial: wait until two adjacent level-(h-1) links both succeed,
//                  then t^(h); succeeds with p^(h)
// Two links progress in lockstep, retrying until each has succeeded once.
// ST/TT finish with a level-J attempt that needs p^(J) and p_ps; SS waits for
// both level-J chains and then needs p_ps.
MCEstimate mc_chain(const ChainPlan& plan, const McOptions& options);

// J must be 1 or 2.
MCEstimate mc_chain(Scheme scheme, int rounds, const SimParams& params, const McOptions& options);

// Mean of max(G1, G2) for independent geometric(p) trial counts.
MCEstimate mc_max_geometric(double p, const McOptions& options);

}  // namespace qrep::oracle
