#include "qlasso/samplable_vector.hpp"

#include <cmath>

namespace qlasso {

SamplableVector::SamplableVector(const Eigen::VectorXd& u) {
  if (!u.allFinite()) throw Error("samplable vector entries must be finite");
  m_ = static_cast<std::size_t>(u.size());
  leaves_ = 1;
  while (leaves_ < std::max<std::size_t>(m_, 1)) leaves_ <<= 1;
  tree_.assign(2 * leaves_, 0.0);
  values_.assign(m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    values_[i] = u[static_cast<Eigen::Index>(i)];
    tree_[leaves_ + i] = std::abs(values_[i]);
  }
  for (std::size_t node = leaves_ - 1; node >= 1; --node) {
    tree_[node] = tree_[2 * node] + tree_[2 * node + 1];
  }
}

void SamplableVector::check_index(std::size_t i) const {
  if (i >= m_) throw IndexOutOfRange("samplable vector index out of range");
}

double SamplableVector::lookup(std::size_t i) const {
  check_index(i);
  return values_[i];
}

void SamplableVector::update(std::size_t i, double v) {
  check_index(i);
  values_[i] = v;
  std::size_t node = leaves_ + i;
  tree_[node] = std::abs(v);
  for (node >>= 1; node >= 1; node >>= 1) {
    tree_[node] = tree_[2 * node] + tree_[2 * node + 1];
  }
}

double SamplableVector::norm_inf() const {
  double best = 0.0;
  for (double v : values_) best = std::max(best, std::abs(v));
  return best;
}

std::pair<std::size_t, int> SamplableVector::sample(Rng& rng) const {
  if (norm1() <= 0.0) throw ZeroVector("cannot sample from a zero vector");
  double target = rng.uniform() * norm1();
  std::size_t node = 1;
  while (node < leaves_) {
    const std::size_t left = 2 * node;
    if (target < tree_[left] || tree_[left + 1] == 0.0) {
      node = left;
    } else {
      target -= tree_[left];
      node = left + 1;
    }
  }
  std::size_t i = node - leaves_;
  // A zero-weight leaf can only be reached through rounding at the margin;
  // walk to the nearest populated index.
  while (tree_[leaves_ + i] == 0.0 && i > 0) --i;
  return {i, values_[i] >= 0.0 ? 1 : -1};
}

Eigen::VectorXd SamplableVector::dense() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(m_));
  for (std::size_t i = 0; i < m_; ++i) out[static_cast<Eigen::Index>(i)] = values_[i];
  return out;
}

}  // namespace qlasso
