#include "qlasso/ensemble.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlasso/lars.hpp"

namespace qlasso {

namespace {

Matrix sigma_sqrt(const Matrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw NotPositiveDefinite("covariance matrix is not positive definite");
  }
  return eig.eigenvectors() *
         eig.eigenvalues().cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

Matrix standard_normal(Eigen::Index n, Eigen::Index d, Rng& rng) {
  Matrix Z(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) Z(i, j) = rng.normal();
  }
  return Z;
}

double matrix_one_norm(const Matrix& M) {
  return M.cwiseAbs().colwise().sum().maxCoeff();
}

std::vector<int> prefix_set(int A_size) {
  std::vector<int> A(static_cast<std::size_t>(A_size));
  for (int i = 0; i < A_size; ++i) A[static_cast<std::size_t>(i)] = i;
  return A;
}

}  // namespace

Matrix gaussian_design(const GaussianSpec& spec) {
  if (spec.n < 1 || spec.d < 1) throw DimensionMismatch("design dimensions must be positive");
  Rng rng(spec.seed);
  Matrix Z = standard_normal(spec.n, spec.d, rng);
  if (spec.identity_sigma()) return Z;
  if (spec.sigma.rows() != spec.d || spec.sigma.cols() != spec.d) {
    throw DimensionMismatch("covariance must be d x d");
  }
  return Z * sigma_sqrt(spec.sigma);
}

double conditioning_stat(const Matrix& X, const std::vector<int>& A) {
  if (A.empty()) throw Error("conditioning statistic needs a nonempty active set");
  Matrix XA(X.rows(), static_cast<Eigen::Index>(A.size()));
  for (std::size_t k = 0; k < A.size(); ++k) XA.col(static_cast<Eigen::Index>(k)) = X.col(A[k]);
  Eigen::JacobiSVD<Matrix> svd(XA);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smax == 0.0 || smin / smax < 1e-10) {
    throw RankDeficient("active submatrix is rank deficient");
  }
  return X.cwiseAbs().maxCoeff() / smin;
}

double conditioning_bound(Eigen::Index n, Eigen::Index d, double delta) {
  const double nd = static_cast<double>(n) * static_cast<double>(d);
  const double denom = (1.0 - 1.0 / std::sqrt(2.0)) * std::sqrt(static_cast<double>(n)) -
                       std::sqrt(2.0 * std::log(2.0 / delta));
  if (denom <= 0.0) throw PreconditionViolated("sample size too small for the tail bound");
  return std::sqrt(std::log(4.0 * nd / delta)) / denom;
}

FrequencyResult conditioning_experiment(const GaussianSpec& spec, int A_size,
                                        int trials, double delta) {
  if (!spec.identity_sigma()) {
    throw PreconditionViolated("the conditioning bound is stated for the identity ensemble");
  }
  if (A_size < 1 || A_size > spec.n / 2) {
    throw PreconditionViolated("active set must satisfy 1 <= |A| <= n/2");
  }
  FrequencyResult result;
  result.trials = trials;
  result.bound = conditioning_bound(spec.n, spec.d, delta);
  Rng master(spec.seed);
  const std::vector<int> A = prefix_set(A_size);
  for (int t = 0; t < trials; ++t) {
    GaussianSpec trial = spec;
    trial.seed = master.split(static_cast<std::uint64_t>(t)).next_u64();
    const Matrix X = gaussian_design(trial);
    const double stat = conditioning_stat(X, A);
    result.values.push_back(stat);
    if (stat <= result.bound) ++result.successes;
  }
  result.frequency = trials > 0 ? static_cast<double>(result.successes) / trials : 0.0;
  return result;
}

int incoherence_budget(const GaussianSpec& spec, double alpha_bar,
                       double delta) {
  double sigma_min = 1.0;
  if (!spec.identity_sigma()) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(spec.sigma);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
      throw NotPositiveDefinite("covariance matrix is not positive definite");
    }
    sigma_min = eig.eigenvalues().minCoeff();
  }
  const double budget = (1.0 - alpha_bar) * (1.0 - alpha_bar) * sigma_min *
                        static_cast<double>(spec.n) /
                        (72.0 * std::log(4.0 * static_cast<double>(spec.d) / delta));
  return static_cast<int>(std::floor(budget));
}

FrequencyResult incoherence_experiment(const GaussianSpec& spec, int A_size,
                                       int trials, double delta,
                                       double alpha_bar) {
  if (A_size < 0) throw PreconditionViolated("active set size must be nonnegative");
  if (A_size > incoherence_budget(spec, alpha_bar, delta)) {
    throw PreconditionViolated("active set size exceeds the incoherence budget");
  }
  FrequencyResult result;
  result.trials = trials;
  result.bound = 0.5 + alpha_bar / 2.0;
  Rng master(spec.seed);
  const std::vector<int> A = prefix_set(A_size);
  for (int t = 0; t < trials; ++t) {
    GaussianSpec trial = spec;
    trial.seed = master.split(static_cast<std::uint64_t>(t)).next_u64();
    const Matrix X = gaussian_design(trial);
    // An empty active set has incoherence 0 by convention.
    double stat = 0.0;
    if (A_size > 0) {
      LassoProblem problem(X, Vector::Zero(spec.n).eval());
      stat = mutual_incoherence(problem, A);
    }
    result.values.push_back(stat);
    if (stat <= result.bound) ++result.successes;
  }
  result.frequency = trials > 0 ? static_cast<double>(result.successes) / trials : 0.0;
  return result;
}

double overlap_bound(const GaussianSpec& spec, const Vector& y, int A_size,
                     double delta) {
  if (y.lpNorm<1>() == 0.0) throw ZeroResidual("overlap bound undefined for y = 0");
  const double nd = static_cast<double>(spec.n) * static_cast<double>(spec.d);
  double sqrt_sigma_norm1 = 1.0;
  double c_sigma = 1.0;
  if (!spec.identity_sigma()) {
    const Matrix root = sigma_sqrt(spec.sigma);
    sqrt_sigma_norm1 = matrix_one_norm(root);
    // Conditional covariance of the inactive block given the active one.
    const Eigen::Index a = A_size;
    const Eigen::Index c = spec.d - a;
    const Matrix Saa = spec.sigma.topLeftCorner(a, a);
    const Matrix Sca = spec.sigma.bottomLeftCorner(c, a);
    const Matrix Scc = spec.sigma.bottomRightCorner(c, c);
    const Matrix cond = Scc - Sca * Saa.ldlt().solve(Sca.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(cond);
    c_sigma = eig.eigenvalues().minCoeff();
    if (c_sigma <= 0.0) throw NotPositiveDefinite("conditional covariance is degenerate");
  }
  return std::pow(delta / 3.0, 2.0 / static_cast<double>(spec.d)) /
         (4.0 * sqrt_sigma_norm1) * (y.norm() / y.lpNorm<1>()) *
         std::sqrt(std::numbers::pi * c_sigma / std::log(6.0 * nd / delta));
}

FrequencyResult overlap_experiment(const GaussianSpec& spec, const Vector& y,
                                   int A_size, int trials, double delta) {
  if (y.size() != spec.n) throw DimensionMismatch("y length does not match n");
  const double cap = std::min(static_cast<double>(spec.n) / 2.0,
                              static_cast<double>(spec.n) - 16.0 * std::log(3.0 / delta));
  if (A_size < 0 || static_cast<double>(A_size) > cap) {
    throw PreconditionViolated("active set size exceeds the overlap precondition");
  }
  FrequencyResult result;
  result.trials = trials;
  result.bound = overlap_bound(spec, y, A_size, delta);
  Rng master(spec.seed);
  const std::vector<int> A = prefix_set(A_size);
  for (int t = 0; t < trials; ++t) {
    GaussianSpec trial = spec;
    trial.seed = master.split(static_cast<std::uint64_t>(t)).next_u64();
    const Matrix X = gaussian_design(trial);
    LassoProblem problem(X, y);
    const double stat = mutual_overlap(problem, A);
    result.values.push_back(stat);
    if (stat >= result.bound) ++result.successes;
  }
  result.frequency = trials > 0 ? static_cast<double>(result.successes) / trials : 0.0;
  return result;
}

Vector noisy_model(const Matrix& X, const NoisyModelSpec& spec) {
  if (spec.beta_star.size() != X.cols()) {
    throw DimensionMismatch("beta* length does not match d");
  }
  Vector w;
  if (spec.fixed_noise) {
    if (spec.fixed_noise->size() != X.rows()) {
      throw DimensionMismatch("noise length does not match n");
    }
    w = *spec.fixed_noise;
  } else {
    Rng rng(spec.seed);
    w = Vector(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) w[i] = spec.noise_sigma * rng.normal();
  }
  return X * spec.beta_star + w;
}

RateCheck slow_rate_check(const LassoProblem& problem, const Vector& beta_star,
                          const Vector& beta_tilde, double lambda,
                          double epsilon) {
  if (beta_star.size() != problem.d() || beta_tilde.size() != problem.d()) {
    throw DimensionMismatch("coefficient length does not match d");
  }
  if (epsilon < 0.0 || epsilon >= 1.0) throw Error("epsilon must lie in [0,1)");
  const Vector w = problem.y() - problem.X() * beta_star;
  const double required = (problem.X().transpose() * w).lpNorm<Eigen::Infinity>() /
                          (1.0 - epsilon);
  if (lambda < required) {
    throw NotApplicable("lambda below the noise-level threshold");
  }
  RateCheck check;
  check.lhs = (problem.X() * (beta_star - beta_tilde)).squaredNorm();
  check.rhs = 2.0 * (2.0 - epsilon) * lambda * beta_star.lpNorm<1>();
  check.pass = check.lhs <= check.rhs;
  return check;
}

RateCheck fast_rate_check(const LassoProblem& problem, const Vector& beta_star,
                          const Vector& beta_tilde, double lambda,
                          double epsilon, double kappa) {
  if (beta_star.size() != problem.d() || beta_tilde.size() != problem.d()) {
    throw DimensionMismatch("coefficient length does not match d");
  }
  if (epsilon < 0.0 || epsilon > 0.25) {
    throw NotApplicable("fast rate requires epsilon <= 1/4");
  }
  const Vector w = problem.y() - problem.X() * beta_star;
  if (lambda < 4.0 * (problem.X().transpose() * w).lpNorm<Eigen::Infinity>()) {
    throw NotApplicable("fast rate requires lambda >= 4 ||X^T w||_inf");
  }
  if (kappa <= 0.0) {
    if (problem.n() < problem.d()) {
      throw NotApplicable("the global curvature constant is exact only for n >= d");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(problem.X().transpose() * problem.X());
    kappa = eig.eigenvalues().minCoeff() / static_cast<double>(problem.n());
    if (kappa <= 0.0) throw RankDeficient("design has no curvature");
  }

  double support = 0.0;
  double beta_s_norm1 = 0.0;
  for (Eigen::Index j = 0; j < problem.d(); ++j) {
    if (beta_star[j] != 0.0) {
      support += 1.0;
      beta_s_norm1 += std::abs(beta_star[j]);
    }
  }
  const Vector diff = beta_tilde - beta_star;
  RateCheck check;
  check.lhs = (problem.X() * diff).squaredNorm() + 3.0 * lambda * diff.lpNorm<1>();
  check.rhs = 81.0 * lambda * lambda * support /
                  (static_cast<double>(problem.n()) * kappa) +
              18.0 * lambda * epsilon * beta_s_norm1;
  check.pass = check.lhs <= check.rhs;
  return check;
}

}  // namespace qlasso
