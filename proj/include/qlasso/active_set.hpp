#pragma once

#include <Eigen/Core>
#include <vector>

#include "qlasso/errors.hpp"
#include "qlasso/problem.hpp"

namespace qlasso {

/// Active submatrix X_A with a maintained Cholesky factor R of the Gram
/// matrix X_A^T X_A (upper triangular, X_A^T X_A = R^T R). Inserting a
/// column appends one row to R in O(n|A| + |A|^2); removal refactorizes the
/// retained columns. The factor lets us apply X_A^+ = (X_A^T X_A)^{-1} X_A^T
/// and the Gram inverse without forming either explicitly.
class ActiveSetState {
 public:
  explicit ActiveSetState(Eigen::Index n) : n_(n) {}

  const std::vector<int>& active() const { return indices_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int j) const;
  /// Position of feature j inside the active ordering.
  Eigen::Index position(int j) const;

  /// Adds column x_j under feature label j. Throws RankDeficient when x_j
  /// lies in col(X_A) within relative tolerance 1e-10.
  void insert(int j, const Vector& x_j);
  void remove(int j);

  const Matrix& columns() const { return cols_; }

  /// (X_A^T X_A)^{-1} b via two triangular solves.
  Vector solve_gram(const Vector& b) const;
  /// X_A^+ v = (X_A^T X_A)^{-1} X_A^T v.
  Vector apply_pinv(const Vector& v) const;
  /// (X_A^+)^T w = X_A (X_A^T X_A)^{-1} w.
  Vector apply_pinv_transpose(const Vector& w) const;
  /// (I - X_A X_A^+) y; returns y itself when A is empty.
  Vector project_residual(const Vector& y) const;

  double sigma_min() const;
  double sigma_max() const;

  int update_count() const { return update_count_; }

 private:
  void refactorize();

  Eigen::Index n_;
  std::vector<int> indices_;
  Matrix cols_;  // n x |A|, ordered as indices_
  Matrix R_;     // |A| x |A| upper triangular Cholesky factor of the Gram
  int update_count_ = 0;

  static constexpr double kRankTol = 1e-10;
  static constexpr int kRefactorEvery = 50;
};

}  // namespace qlasso
