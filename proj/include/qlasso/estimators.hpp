#pragma once

#include <Eigen/Core>
#include <string>

#include "qlasso/errors.hpp"
#include "qlasso/ledger.hpp"
#include "qlasso/rng.hpp"
#include "qlasso/samplable_vector.hpp"

namespace qlasso {

/// How simulated estimators inject error within their guarantee.
///  - Stochastic: uniform noise inside the bound (with the documented
///    failure branch where applicable).
///  - Adversarial: error pinned at the bound, sign drawn from the RNG;
///    stress-tests downstream tolerance math.
///  - Exact: no injected error; queries are still charged. Used for
///    degenerate-precision equivalence tests.
enum class NoiseMode { Stochastic, Adversarial, Exact };

NoiseMode noise_mode_from_string(const std::string& name);
std::string noise_mode_name(NoiseMode mode);

struct EstimateContract {
  double epsilon = 0.05;  // relative-scale error parameter, > 0
  double delta = 0.01;    // failure probability, in (0,1)
  NoiseMode mode = NoiseMode::Stochastic;

  void validate() const;
};

/// Charged query counts, pinned so ledgers are reproducible.
/// Classical sampling estimator: q = ceil(2 eps^-2 ln(2/delta)) draws.
/// Simulated quantum estimator: ceil(kQuantumC * eps^-1 * ln(1/delta)).
inline constexpr double kQuantumC = 8.0;
std::uint64_t classical_sample_count(double epsilon, double delta);
std::uint64_t quantum_query_count(double epsilon, double delta);

/// Sampling estimator of A_j^T u: draws q indices i_k ~ |A_ij|/||A_j||_1 and
/// averages z_k = ||A_j||_1 * u_{i_k} * sign(A_{i_k j}). With probability
/// >= 1-delta the result is within eps * min(||A_j||_inf ||u||_1,
/// ||A_j||_1 ||u||_inf) of the true inner product. A zero sampled side
/// returns exactly 0 without drawing.
double inner_product_classical(const SamplableVector& a_col,
                               const Eigen::VectorXd& u,
                               const EstimateContract& contract, Rng& rng,
                               QueryLedger& ledger);

/// Amplitude-estimation primitive: estimates a in [0,1] within
/// sqrt(a(1-a))/M + 1/M^2 with probability 9/10; the failure branch may be
/// off by up to twice that bound. Charges M quantum queries.
double amp_est_sim(double a, std::uint64_t M, NoiseMode mode, Rng& rng,
                   QueryLedger& ledger);

/// Simulated quantum estimator of A_j^T u: splits the inner product into the
/// positive and negative amplitude parts, perturbs each within the per-part
/// budget (eps/2 of the smaller norm product), and recombines. Error bound
/// as in inner_product_classical; charges quantum_query_count(eps, delta).
double inner_product_quantum_sim(const Eigen::VectorXd& a_col,
                                 const SamplableVector& u,
                                 const EstimateContract& contract, Rng& rng,
                                 QueryLedger& ledger);

/// For estimates a~, b~ with |a~-a| <= eps_a, |b~-b| <= eps_b <= |b|/2:
/// |a~/b~ - a/b| <= 2(|a|/|b|)(eps_a/|a| + eps_b/|b|). Returns the bound.
double ratio_error_bound(double a, double b, double eps_a, double eps_b);

}  // namespace qlasso
