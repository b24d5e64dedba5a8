#include "qrepeater/binomial.hpp"

#include <algorithm>
#include <cmath>

namespace qrep {

std::vector<double> binomial_pmf(std::int64_t n, double q) {
  std::vector<double> pmf(static_cast<std::size_t>(n + 1), 0.0);
  if (q <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (q >= 1.0) {
    pmf[static_cast<std::size_t>(n)] = 1.0;
    return pmf;
  }
  // Unnormalized ratios walked outward from the mode, then normalized. The
  // mode term is 1, so nothing overflows and far tails underflow harmlessly.
  const double ratio = q / (1.0 - q);
  const auto mode = std::min<std::int64_t>(n, static_cast<std::int64_t>(std::floor((n + 1) * q)));
  const auto at = [&](std::int64_t k) -> double& { return pmf[static_cast<std::size_t>(k)]; };
  at(mode) = 1.0;
  for (std::int64_t k = mode; k < n; ++k) {
    at(k + 1) = at(k) * ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  for (std::int64_t k = mode; k > 0; --k) {
    at(k - 1) = at(k) * static_cast<double>(k) / (ratio * static_cast<double>(n - k + 1));
  }
  double total = 0.0;
  for (double v : pmf) total += v;
  for (double& v : pmf) v /= total;
  return pmf;
}

double binomial_at_least_one(std::int64_t n, double q) {
  if (q <= 0.0) return 0.0;
  if (q >= 1.0) return n >= 1 ? 1.0 : 0.0;
  return -std::expm1(static_cast<double>(n) * std::log1p(-q));
}

double binomial_at_least_two(std::int64_t n, double q) {
  if (n < 2 || q <= 0.0) return 0.0;
  if (q >= 1.0) return 1.0;
  const double nd = static_cast<double>(n);
  const double mean = nd * q;
  if (mean > 1.0) {
    // P0 + P1 is small here; the complement loses nothing.
    const double p0 = std::exp(nd * std::log1p(-q));
    const double p1 = nd * q * std::exp((nd - 1.0) * std::log1p(-q));
    return 1.0 - p0 - p1;
  }
  // Sum the upper tail directly: terms fall off geometrically once k > mean.
  const double ratio = q / (1.0 - q);
  double term = std::exp(std::log(nd * (nd - 1.0) / 2.0) + 2.0 * std::log(q) +
                         (nd - 2.0) * std::log1p(-q));
  double sum = 0.0;
  for (std::int64_t k = 2; k <= n; ++k) {
    sum += term;
    if (term < sum * 1e-18) break;
    term *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return sum;
}

}  // namespace qrep
