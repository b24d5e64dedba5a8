#pragma once

#include <cstdint>

#include "qrepeater/oracle/sbsa.hpp"
#include "qrepeater/params.hpp"

namespace qrep::oracle {

// Exact SS elementary coincidence rate of the episode process simulated by
// mc_elementary, by renewal-reward:
//   (eta^2 / 2) E[min(K, K')] / (t0 n_ex(p0)),  K ~ Binomial(NM, q) given K >= 1.
double ss_elementary_rate_exact(const SimParams& params);

// E[floor(K / 2)] for K ~ Binomial(nm, q), with the distribution of K built by
// adding one Bernoulli(q) mode at a time.
double expected_pairs_dp(std::int64_t nm, double q);
Rational expected_pairs_exact(std::int64_t nm, const Rational& q);

}  // namespace qrep::oracle
