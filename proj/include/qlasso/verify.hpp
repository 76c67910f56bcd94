#pragma once

#include <vector>

#include "qlasso/path.hpp"
#include "qlasso/problem.hpp"

#include "json.hpp"

namespace qlasso {

struct KktCoordinate {
  int index = 0;
  bool active = false;
  double correlation = 0.0;  // X_j^T (y - X beta~)
  double slack = 0.0;        // distance to the nearest violated constraint
  bool pass = true;
};

struct KktReport {
  double lambda = 0.0;
  double epsilon = 0.0;
  std::vector<KktCoordinate> coordinates;
  bool pass = true;
};

inline constexpr double kKktTol = 1e-9;

/// Relaxed stationarity check: active coordinates need
/// lambda(1-eps) <= X_j^T(y - X beta~) sign(beta~_j) <= lambda, inactive
/// ones |X_j^T(y - X beta~)| <= lambda, all within kKktTol absolute.
KktReport kkt_check(const LassoProblem& problem, const Vector& beta,
                    double lambda, double epsilon);

/// Primal-dual gap at (beta~, lambda). The dual candidate
/// kappa = s (X beta~ - y) is rescaled by s = min(1, lambda/||X^T(X beta~ -
/// y)||_inf) so it is always dual feasible; the gap is then nonnegative and
/// upper-bounds the suboptimality of beta~.
double duality_gap(const LassoProblem& problem, const Vector& beta,
                   double lambda);

/// Independent reference solver: accelerated proximal gradient with restarts
/// every 200 iterations, step 1/sigma_max(X)^2, stopping at duality gap <=
/// tol. Deterministic. Throws NoConvergence after 10^6 iterations.
/// warm_start, when given, seeds the iteration.
Vector lasso_oracle(const LassoProblem& problem, double lambda, double tol,
                    const Vector* warm_start = nullptr);

struct PathCertificate {
  double epsilon = 0.0;
  int grid_per_segment = 0;
  /// max over grid points of (gap - lambda eps ||beta||_1) / scale, where
  /// scale = max(lambda eps ||beta||_1, 1e-9).
  double max_violation = 0.0;
  double worst_lambda = 0.0;
  bool pass = true;

  nlohmann::json to_json() const;
};

inline constexpr double kCertifySlack = 1e-9;

/// Checks duality_gap <= lambda * eps * ||beta(lambda)||_1 + kCertifySlack
/// on grid_per_segment points per path segment.
PathCertificate certify_path(const RegularisationPath& path,
                             const LassoProblem& problem, double epsilon,
                             int grid_per_segment);

}  // namespace qlasso
