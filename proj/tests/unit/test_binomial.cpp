#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "qrepeater/binomial.hpp"

using namespace qrep;

namespace {

double direct_pmf(std::int64_t n, std::int64_t k, double q) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) * std::pow(q, k) *
         std::pow(1 - q, n - k);
}

}  // namespace

TEST(BinomialPmf, SumsToOneAndMatchesDirect) {
  for (std::int64_t n : {1, 2, 7, 40, 300}) {
    for (double q : {0.0, 1e-4, 0.01, 0.3, 0.5, 0.97, 1.0}) {
      const auto pmf = binomial_pmf(n, q);
      ASSERT_EQ(pmf.size(), static_cast<std::size_t>(n + 1));
      EXPECT_NEAR(std::accumulate(pmf.begin(), pmf.end(), 0.0), 1.0, 1e-13);
      if (q > 0 && q < 1 && n <= 40) {
        for (std::int64_t k = 0; k <= n; ++k) EXPECT_NEAR(pmf[k], direct_pmf(n, k, q), 1e-12);
      }
    }
  }
}

TEST(BinomialPmf, DegenerateEnds) {
  EXPECT_EQ(binomial_pmf(5, 0.0)[0], 1.0);
  EXPECT_EQ(binomial_pmf(5, 1.0)[5], 1.0);
  EXPECT_EQ(binomial_pmf(0, 0.3).size(), 1u);
}

TEST(BinomialTails, ClosedForms) {
  EXPECT_NEAR(binomial_at_least_one(1, 0.3), 0.3, 1e-16);
  EXPECT_NEAR(binomial_at_least_one(2, 0.5), 0.75, 1e-16);
  EXPECT_NEAR(binomial_at_least_two(2, 0.5), 0.25, 1e-16);
  for (std::int64_t n : {2, 10, 1000, 30000}) {
    for (double q : {1e-7, 1e-3, 0.05, 0.5}) {
      const double one = -std::expm1(n * std::log1p(-q));
      EXPECT_NEAR(binomial_at_least_one(n, q), one, 1e-15 + 1e-13 * one);
      // direct upper-tail sum in long double
      long double two_l = 0.0L;
      for (std::int64_t k = 2; k <= n; ++k) {
        const long double term =
            std::exp(std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(n - k + 1.0L) +
                     k * std::log(static_cast<long double>(q)) + (n - k) * std::log1p(-static_cast<long double>(q)));
        two_l += term;
        if (k > n * q + 2 && term < two_l * 1e-22L) break;
      }
      const double two = static_cast<double>(two_l);
      EXPECT_NEAR(binomial_at_least_two(n, q), two, 1e-12 * two + 1e-300);
      EXPECT_LE(binomial_at_least_two(n, q), binomial_at_least_one(n, q));
    }
  }
}

TEST(BinomialTails, SmallQNoCancellation) {
  // P(K >= 2) ~ C(n, 2) q^2 for tiny q.
  const double q = 1e-9;
  const double expected = 10.0 * 9.0 / 2.0 * q * q;
  EXPECT_NEAR(binomial_at_least_two(10, q) / expected, 1.0, 1e-6);
}
