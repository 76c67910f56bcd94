#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qlasso/problem.hpp"
#include "qlasso/rng.hpp"

namespace qlasso {

/// Random design with rows i.i.d. N(0, Sigma). Sigma empty => identity.
struct GaussianSpec {
  Eigen::Index n = 0;
  Eigen::Index d = 0;
  Matrix sigma;  // d x d positive definite, or 0x0 for identity
  std::uint64_t seed = 0;

  bool identity_sigma() const { return sigma.size() == 0; }
};

Matrix gaussian_design(const GaussianSpec& spec);

/// ||X||_max / sigma_min(X_A).
double conditioning_stat(const Matrix& X, const std::vector<int>& A);

/// Lemma-style tail bound on conditioning_stat for the identity ensemble at
/// failure probability delta: sqrt(ln(4nd/delta)) / ((1 - 1/sqrt(2)) sqrt(n)
/// - sqrt(2 ln(2/delta))). Requires |A| <= n/2.
double conditioning_bound(Eigen::Index n, Eigen::Index d, double delta);

struct FrequencyResult {
  int trials = 0;
  int successes = 0;
  double frequency = 0.0;
  double bound = 0.0;  // the threshold the statistic was compared against
  std::vector<double> values;
};

/// Fraction of seeded designs whose conditioning_stat stays below
/// conditioning_bound.
FrequencyResult conditioning_experiment(const GaussianSpec& spec, int A_size,
                                        int trials, double delta);

/// Largest |A| for which the incoherence tail bound applies:
/// floor((1 - alpha_bar)^2 sigma_min(Sigma) n / (72 ln(4d/delta))).
int incoherence_budget(const GaussianSpec& spec, double alpha_bar,
                       double delta);

/// Fraction of designs with ||X_A^+ X_{A^c}||_1 <= 1/2 + alpha_bar/2, with A
/// the first A_size indices. Throws PreconditionViolated when A_size exceeds
/// incoherence_budget.
FrequencyResult incoherence_experiment(const GaussianSpec& spec, int A_size,
                                       int trials, double delta,
                                       double alpha_bar = 0.0);

/// Overlap lower bound (delta/3)^{2/d} / (4 ||sqrt(Sigma)||_1) *
/// (||y||_2/||y||_1) * sqrt(pi C_Sigma / ln(6nd/delta)); C_Sigma is the
/// smallest eigenvalue of the conditional covariance Sigma_{A^c|A} (1 for
/// identity).
double overlap_bound(const GaussianSpec& spec, const Vector& y, int A_size,
                     double delta);

/// Fraction of designs whose mutual_overlap meets overlap_bound. Requires
/// A_size <= min(n/2, n - 16 ln(3/delta)).
FrequencyResult overlap_experiment(const GaussianSpec& spec, const Vector& y,
                                   int A_size, int trials, double delta);

struct NoisyModelSpec {
  Vector beta_star;                  // length d; support defines S
  std::optional<Vector> fixed_noise; // used verbatim when set
  double noise_sigma = 0.0;          // Gaussian noise scale otherwise
  std::uint64_t seed = 0;
};

/// y = X beta* + w.
Vector noisy_model(const Matrix& X, const NoisyModelSpec& spec);

struct RateCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// Slow-rate inequality ||X(beta* - beta~)||_2^2 <= 2(2-eps) lambda
/// ||beta*||_1, valid when lambda >= ||X^T w||_inf / (1-eps). Throws
/// NotApplicable when the lambda precondition fails. `w` is the realized
/// noise vector y - X beta*.
RateCheck slow_rate_check(const LassoProblem& problem, const Vector& beta_star,
                          const Vector& beta_tilde, double lambda,
                          double epsilon);

/// Fast-rate inequality ||X d||_2^2 + 3 lambda ||d||_1 <= 81 lambda^2 |S| /
/// (n kappa) + 18 lambda eps ||beta*_S||_1 with d = beta~ - beta*, under
/// lambda >= 4 ||X^T w||_inf and eps <= 1/4. kappa <= 0 means "compute
/// sigma_min(X^T X)/n internally" (exact for n >= d).
RateCheck fast_rate_check(const LassoProblem& problem, const Vector& beta_star,
                          const Vector& beta_tilde, double lambda,
                          double epsilon, double kappa = 0.0);

}  // namespace qlasso
