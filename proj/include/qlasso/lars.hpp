#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qlasso/active_set.hpp"
#include "qlasso/estimators.hpp"
#include "qlasso/ledger.hpp"
#include "qlasso/path.hpp"
#include "qlasso/problem.hpp"
#include "qlasso/rng.hpp"

namespace qlasso {

/// Snapshot of one homotopy iteration shared by the time computations.
struct IterationContext {
  double lambda_t = 0.0;
  const ActiveSetState* state = nullptr;
  Vector residual_vec;   // y - X_A mu
  Vector direction_vec;  // X_A theta
  Vector mu;             // X_A^+ y, over A
  Vector theta;          // (X_A^T X_A)^{-1} eta_A, over A
};

/// Joining times over the inactive set I = [d] \ A: for each i, both sign
/// choices of X_i^T (y - X_A mu) / (+-1 - X_i^T X_A theta) are evaluated and
/// candidates outside (0, lambda_t] are discarded; at most one survives.
/// Returns one value per inactive feature (0 = never joins on this segment),
/// alongside the inactive index list.
std::pair<std::vector<double>, std::vector<int>> joining_times(
    const IterationContext& ctx, const LassoProblem& problem);

/// Crossing times over A: mu_i/theta_i when theta_i != 0 and the ratio lies
/// in [0, lambda_t], else 0.
std::vector<double> crossing_times(const IterationContext& ctx);

/// Exact homotopy. Produces at most T kinks; sets path.truncated when the
/// budget stops the solve before lambda reaches 0.
RegularisationPath lars_exact(const LassoProblem& problem, int T);

/// Same path as lars_exact, but the joining argmax is located through the
/// simulated exact-search subroutine with per-iteration failure budget
/// delta/T; the ledger records the charged sqrt(|I|)-scaled search cost.
/// With failure injection off the output is identical to lars_exact.
RegularisationPath lars_quantum_simple(const LassoProblem& problem, int T,
                                       double delta, QueryLedger& ledger,
                                       Rng& rng, bool inject_failures = false);

enum class ApproxMode { QuantumSim, ClassicalSampling };

struct ApproxConfig {
  double epsilon = 0.05;  // in (0,1)
  double delta = 0.01;    // total failure budget
  int T = 1000;           // kink budget
  ApproxMode mode = ApproxMode::QuantumSim;
  NoiseMode noise = NoiseMode::Stochastic;
  int stationary_cap = 3;
  std::uint64_t seed = 0;
  /// Upper bound on ||X_A^+ X_{A^c}||_1 for the current active set; when
  /// absent it is measured exactly.
  std::function<double(const std::vector<int>&)> alpha_provider;
  /// Lower bound on the overlap gamma_A; when absent it is measured from the
  /// current residual.
  std::optional<double> gamma_lower_bound;

  void validate() const;
};

/// Error-tolerant homotopy: joining times are located through noisy
/// estimators sized from the (alpha_A, gamma_A)-dependent budget split, the
/// chosen joining time is inflated by (1 - eps/(1+alpha_A))^{-1} so it never
/// undershoots the true one, and crossing times stay exact. Kinks where
/// lambda does not move are recorded as Stationary events.
RegularisationPath lars_approx(const LassoProblem& problem,
                               const ApproxConfig& config,
                               QueryLedger& ledger);

/// ||X_A^+ X_{A^c}||_1 (max over inactive columns j of ||X_A^+ X_j||_1).
double mutual_incoherence(const LassoProblem& problem,
                          const std::vector<int>& A);

/// ||X^T r||_inf / (||X||_max ||r||_1) with r = (I - X_A X_A^+) y.
/// At most 1 by Hoelder; throws ZeroResidual when y lies in col(X_A).
double mutual_overlap(const LassoProblem& problem, const std::vector<int>& A);

}  // namespace qlasso
