#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <utility>
#include <vector>

#include "qlasso/errors.hpp"
#include "qlasso/rng.hpp"

namespace qlasso {

/// Segment tree over |u_i| with signs at the leaves. Sampling walks the
/// partial sums from the root, so an index comes back with probability
/// |u_i| / ||u||_1 in O(log m) node visits; point updates touch one
/// root-to-leaf path.
class SamplableVector {
 public:
  explicit SamplableVector(const Eigen::VectorXd& u);
  explicit SamplableVector(std::size_t m) : SamplableVector(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m))) {}

  std::size_t size() const { return m_; }
  double lookup(std::size_t i) const;
  void update(std::size_t i, double v);

  double norm1() const { return tree_[1]; }
  double norm_inf() const;

  /// (index, sign of u_i); sign is exact.
  std::pair<std::size_t, int> sample(Rng& rng) const;

  Eigen::VectorXd dense() const;

 private:
  void check_index(std::size_t i) const;

  std::size_t m_ = 0;
  std::size_t leaves_ = 1;       // power of two >= m_
  std::vector<double> tree_;     // 1-based; tree_[1] is the root sum of |u_i|
  std::vector<double> values_;   // signed entries
};

}  // namespace qlasso
