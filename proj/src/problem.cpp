#include "qlasso/problem.hpp"

#include <cmath>

namespace qlasso {

LassoProblem::LassoProblem(Matrix X, Vector y)
    : X_(std::move(X)), y_(std::move(y)) {
  if (X_.rows() < 1 || X_.cols() < 1) {
    throw DimensionMismatch("design matrix must be at least 1x1");
  }
  if (y_.size() != X_.rows()) {
    throw DimensionMismatch("y length does not match the number of rows of X");
  }
  if (!X_.allFinite() || !y_.allFinite()) {
    throw Error("problem data contains non-finite entries");
  }
}

std::pair<double, std::vector<int>> lambda_max(const LassoProblem& problem) {
  if (problem.y().lpNorm<Eigen::Infinity>() == 0.0) {
    throw AllZeroObservations("y = 0: the path is trivially beta = 0");
  }
  const Vector correlations = (problem.X().transpose() * problem.y()).cwiseAbs();
  const double lambda0 = correlations.maxCoeff();
  std::vector<int> argmax;
  const double tol = 1e-12 * lambda0;
  for (Eigen::Index j = 0; j < correlations.size(); ++j) {
    if (correlations[j] >= lambda0 - tol) argmax.push_back(static_cast<int>(j));
  }
  return {lambda0, argmax};
}

double lasso_cost(const LassoProblem& problem, const Vector& beta,
                  double lambda) {
  if (beta.size() != problem.d()) {
    throw DimensionMismatch("beta length does not match d");
  }
  if (lambda < 0.0) throw Error("lambda must be nonnegative");
  const double fit = 0.5 * (problem.y() - problem.X() * beta).squaredNorm();
  return fit + lambda * beta.lpNorm<1>();
}

}  // namespace qlasso
