#include "qrepeater/oracle/renewal.hpp"

#include <vector>

#include "qrepeater/binomial.hpp"
#include "qrepeater/chain_model.hpp"
#include "qrepeater/errors.hpp"

namespace qrep::oracle {

namespace {

template <class T>
std::vector<T> convolve_modes(std::int64_t nm, const T& q) {
  std::vector<T> dist{T(1)};
  dist.reserve(static_cast<std::size_t>(nm) + 1);
  const T miss = T(1) - q;
  for (std::int64_t i = 0; i < nm; ++i) {
    dist.push_back(T(0));
    for (std::size_t k = dist.size() - 1; k > 0; --k) dist[k] = dist[k] * miss + dist[k - 1] * q;
    dist[0] = dist[0] * miss;
  }
  return dist;
}

template <class T>
T floor_half_mean(const std::vector<T>& dist) {
  T sum(0);
  for (std::size_t k = 2; k < dist.size(); ++k) sum += T(static_cast<long long>(k / 2)) * dist[k];
  return sum;
}

}  // namespace

double ss_elementary_rate_exact(const SimParams& params) {
  validate(params);
  const std::int64_t nm = params.modes();
  const double q = single_herald_prob(params);
  const double p0 = binomial_at_least_one(nm, q);
  if (!(p0 > 0.0)) throw UnreachableError(0, "unreachable configuration: SS heralding probability is 0");
  const auto pmf = binomial_pmf(nm, q);

  // E[min(K, K')] = sum_{k >= 1} P(K >= k)^2 with K conditioned on K >= 1.
  std::vector<double> tail(pmf.size() + 1, 0.0);
  for (std::size_t k = pmf.size(); k-- > 0;) tail[k] = tail[k + 1] + pmf[k];
  double expected_min = 1.0;  // k = 1 term
  for (std::size_t k = 2; k < pmf.size(); ++k) {
    const double t = tail[k] / p0;
    expected_min += t * t;
  }
  const double eta = effective_eta(params);
  return 0.5 * eta * eta * expected_min / (elementary_trial_time(params) * n_ex(p0));
}

double expected_pairs_dp(std::int64_t nm, double q) {
  if (nm < 0) throw ValidationError("nm >= 0 required");
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("q must lie in [0, 1]");
  return floor_half_mean(convolve_modes(nm, q));
}

Rational expected_pairs_exact(std::int64_t nm, const Rational& q) {
  if (nm < 0) throw ValidationError("nm >= 0 required");
  if (q < 0 || q > 1) throw ValidationError("q must lie in [0, 1]");
  return floor_half_mean(convolve_modes(nm, q));
}

}  // namespace qrep::oracle
