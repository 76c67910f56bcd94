#include "qlasso/active_set.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace qlasso {

bool ActiveSetState::contains(int j) const {
  return std::find(indices_.begin(), indices_.end(), j) != indices_.end();
}

Eigen::Index ActiveSetState::position(int j) const {
  auto it = std::find(indices_.begin(), indices_.end(), j);
  if (it == indices_.end()) throw NotActive("feature is not in the active set");
  return static_cast<Eigen::Index>(it - indices_.begin());
}

void ActiveSetState::insert(int j, const Vector& x_j) {
  if (x_j.size() != n_) throw DimensionMismatch("column length does not match n");
  if (contains(j)) throw Error("feature already active");

  const Eigen::Index k = size();
  const double col_norm = x_j.norm();
  if (col_norm == 0.0) throw RankDeficient("zero column cannot join the active set");

  // Append one row/column to the Gram Cholesky factor: with g = X_A^T x_j,
  // solve R^T w = g; the new diagonal entry is rho, the distance from x_j to
  // the span of the active columns. Forming rho as the norm of the explicit
  // orthogonal residual (rather than sqrt(|x_j|^2 - |w|^2)) avoids the
  // catastrophic cancellation that would hide near-dependent columns.
  Vector w(k);
  double rho = col_norm;
  if (k > 0) {
    const Vector g = cols_.transpose() * x_j;
    w = R_.transpose().triangularView<Eigen::Lower>().solve(g);
    const Vector coeffs = R_.triangularView<Eigen::Upper>().solve(w);
    rho = (x_j - cols_ * coeffs).norm();
  }
  if (rho <= kRankTol * col_norm) {
    throw RankDeficient("new column lies in the span of the active columns");
  }

  cols_.conservativeResize(n_, k + 1);
  cols_.col(k) = x_j;
  Matrix R_new = Matrix::Zero(k + 1, k + 1);
  R_new.topLeftCorner(k, k) = R_;
  R_new.block(0, k, k, 1) = w;
  R_new(k, k) = rho;
  R_ = std::move(R_new);
  indices_.push_back(j);

  if (++update_count_ >= kRefactorEvery) refactorize();
}

void ActiveSetState::remove(int j) {
  const Eigen::Index p = position(j);
  const Eigen::Index k = size();
  for (Eigen::Index c = p; c + 1 < k; ++c) cols_.col(c) = cols_.col(c + 1);
  cols_.conservativeResize(n_, k - 1);
  indices_.erase(indices_.begin() + p);
  refactorize();
}

void ActiveSetState::refactorize() {
  update_count_ = 0;
  const Eigen::Index k = size();
  if (k == 0) {
    R_.resize(0, 0);
    return;
  }
  const Matrix gram = cols_.transpose() * cols_;
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw RankDeficient("active Gram matrix is not positive definite");
  }
  R_ = llt.matrixU();
}

Vector ActiveSetState::solve_gram(const Vector& b) const {
  if (b.size() != size()) throw DimensionMismatch("rhs length does not match |A|");
  if (size() == 0) return b;
  Vector t = R_.transpose().triangularView<Eigen::Lower>().solve(b);
  return R_.triangularView<Eigen::Upper>().solve(t);
}

Vector ActiveSetState::apply_pinv(const Vector& v) const {
  if (v.size() != n_) throw DimensionMismatch("vector length does not match n");
  if (size() == 0) return Vector::Zero(0);
  return solve_gram(cols_.transpose() * v);
}

Vector ActiveSetState::apply_pinv_transpose(const Vector& w) const {
  if (w.size() != size()) throw DimensionMismatch("vector length does not match |A|");
  if (size() == 0) return Vector::Zero(n_);
  return cols_ * solve_gram(w);
}

Vector ActiveSetState::project_residual(const Vector& y) const {
  if (y.size() != n_) throw DimensionMismatch("vector length does not match n");
  if (size() == 0) return y;
  return y - cols_ * apply_pinv(y);
}

double ActiveSetState::sigma_min() const {
  if (size() == 0) throw Error("sigma_min of an empty active set");
  Eigen::JacobiSVD<Matrix> svd(cols_);
  return svd.singularValues().minCoeff();
}

double ActiveSetState::sigma_max() const {
  if (size() == 0) throw Error("sigma_max of an empty active set");
  Eigen::JacobiSVD<Matrix> svd(cols_);
  return svd.singularValues().maxCoeff();
}

}  // namespace qlasso
