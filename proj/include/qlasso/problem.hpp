#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "qlasso/errors.hpp"

namespace qlasso {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Lasso instance: design matrix X (n observations x d features) and
/// observation vector y. Immutable after construction.
class LassoProblem {
 public:
  LassoProblem(Matrix X, Vector y);

  const Matrix& X() const { return X_; }
  const Vector& y() const { return y_; }
  Eigen::Index n() const { return X_.rows(); }
  Eigen::Index d() const { return X_.cols(); }
  Vector column(Eigen::Index j) const { return X_.col(j); }

 private:
  Matrix X_;
  Vector y_;
};

/// First kink of the path: lambda0 = ||X^T y||_inf together with the set of
/// features attaining the max within relative tolerance 1e-12.
/// Throws AllZeroObservations when y = 0 (the path is trivially beta = 0).
std::pair<double, std::vector<int>> lambda_max(const LassoProblem& problem);

/// 1/2 ||y - X beta||_2^2 + lambda ||beta||_1.
double lasso_cost(const LassoProblem& problem, const Vector& beta,
                  double lambda);

}  // namespace qlasso
