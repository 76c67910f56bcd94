#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "qlasso/errors.hpp"
#include "qlasso/estimators.hpp"
#include "qlasso/ledger.hpp"
#include "qlasso/rng.hpp"

namespace qlasso {

/// Noisy value oracle over a domain of size m: evaluator(k) returns an
/// estimate within `epsilon` of the true value with per-call failure
/// probability at most `delta2`. `truth(k)` is the uncharged exact value,
/// used only to enforce the output guarantee of the search simulator.
struct NoisyValueOracle {
  std::function<double(std::uint64_t)> evaluator;
  std::function<double(std::uint64_t)> truth;
  std::uint64_t m = 0;
  double epsilon = 0.0;
  double delta2 = 0.0;
};

/// Charged search queries: ceil(kSearchC * sqrt(m) * ln(1/delta)).
inline constexpr double kSearchC = 8.0;
std::uint64_t search_query_count(std::uint64_t m, double delta);

/// delta2 admissibility for approximate min finding:
/// delta2 <= C * delta1^2 / (m * ln(1/delta1)); C is configurable because
/// the underlying relation pins no constant.
inline constexpr double kDelta2C = 1.0;

struct MinFindConfig {
  NoiseMode mode = NoiseMode::Stochastic;
  /// When set, min_exact_sim returns a uniform index with probability delta
  /// instead of always succeeding.
  bool inject_failures = false;
  double delta2_constant = kDelta2C;
};

/// Exact minimum finding: returns the true argmin (ties -> lowest index) and
/// charges search_query_count(m, delta) value-oracle queries.
std::pair<std::uint64_t, double> min_exact_sim(
    const std::function<double(std::uint64_t)>& values, std::uint64_t m,
    double delta, QueryLedger& ledger, Rng& rng,
    const MinFindConfig& config = {});

/// Approximate minimum finding: returns k whose true value satisfies
/// u_k <= min u + 2*eps. One noisy evaluation per element is charged to the
/// ledger plus the search cost. Stochastic mode picks uniformly among the
/// qualifying indices reachable through the noisy evaluations; Adversarial
/// mode returns the worst still-qualifying index; Exact mode degenerates to
/// the true argmin.
std::uint64_t min_approx_sim(const NoisyValueOracle& oracle, double epsilon,
                             double delta1, QueryLedger& ledger, Rng& rng,
                             const MinFindConfig& config = {});

}  // namespace qlasso
