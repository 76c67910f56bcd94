#include "qlasso/minfind.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qlasso {

std::uint64_t search_query_count(std::uint64_t m, double delta) {
  return static_cast<std::uint64_t>(
      std::ceil(kSearchC * std::sqrt(static_cast<double>(m)) * std::log(1.0 / delta)));
}

std::pair<std::uint64_t, double> min_exact_sim(
    const std::function<double(std::uint64_t)>& values, std::uint64_t m,
    double delta, QueryLedger& ledger, Rng& rng, const MinFindConfig& config) {
  if (m == 0) throw EmptyDomain("minimum finding over an empty domain");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0,1)");
  ledger.charge_quantum(search_query_count(m, delta));

  std::uint64_t best = 0;
  double best_value = values(0);
  for (std::uint64_t k = 1; k < m; ++k) {
    const double v = values(k);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  if (config.inject_failures && rng.bernoulli(delta)) {
    const std::uint64_t k = rng.uniform_index(m);
    return {k, values(k)};
  }
  return {best, best_value};
}

std::uint64_t min_approx_sim(const NoisyValueOracle& oracle, double epsilon,
                             double delta1, QueryLedger& ledger, Rng& rng,
                             const MinFindConfig& config) {
  if (oracle.m == 0) throw EmptyDomain("minimum finding over an empty domain");
  if (!(delta1 > 0.0 && delta1 < 1.0)) throw Error("delta1 must lie in (0,1)");
  const double delta2_cap = config.delta2_constant * delta1 * delta1 /
      (static_cast<double>(oracle.m) * std::log(1.0 / delta1));
  if (oracle.delta2 > delta2_cap) {
    throw ContractViolation("oracle per-call failure probability exceeds the admissible delta2");
  }
  ledger.charge_quantum(search_query_count(oracle.m, delta1));

  // One noisy evaluation per element is how the search observes the values;
  // indices whose noisy estimate lands within 2*epsilon of the smallest
  // noisy estimate are the reachable candidates.
  std::vector<double> noisy(oracle.m);
  double noisy_min = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < oracle.m; ++k) {
    noisy[k] = oracle.evaluator(k);
    noisy_min = std::min(noisy_min, noisy[k]);
  }
  double true_min = std::numeric_limits<double>::infinity();
  std::uint64_t true_argmin = 0;
  for (std::uint64_t k = 0; k < oracle.m; ++k) {
    const double t = oracle.truth(k);
    if (t < true_min) {
      true_min = t;
      true_argmin = k;
    }
  }
  if (config.mode == NoiseMode::Exact || epsilon == 0.0) return true_argmin;

  // The output guarantee u_k <= min + 2*epsilon is enforced by construction:
  // only qualifying indices are returned, regardless of how far the noisy
  // estimates strayed.
  std::vector<std::uint64_t> qualifying;
  for (std::uint64_t k = 0; k < oracle.m; ++k) {
    if (oracle.truth(k) <= true_min + 2.0 * epsilon &&
        noisy[k] <= noisy_min + 2.0 * epsilon) {
      qualifying.push_back(k);
    }
  }
  if (qualifying.empty()) return true_argmin;

  if (config.mode == NoiseMode::Adversarial) {
    std::uint64_t worst = qualifying.front();
    for (std::uint64_t k : qualifying) {
      if (oracle.truth(k) > oracle.truth(worst)) worst = k;
    }
    return worst;
  }
  return qualifying[rng.uniform_index(qualifying.size())];
}

}  // namespace qlasso
