#pragma once

#include <cstdint>
#include <vector>

namespace qrep {

// Probability mass of Binomial(n, q) for k = 0..n.
std::vector<double> binomial_pmf(std::int64_t n, double q);

// P(Binomial(n, q) >= 2), accurate for both small and large n*q.
double binomial_at_least_two(std::int64_t n, double q);

// P(Binomial(n, q) >= 1) = 1 - (1 - q)^n without cancellation.
double binomial_at_least_one(std::int64_t n, double q);

}  // namespace qrep
