#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlasso/errors.hpp"
#include "qlasso/problem.hpp"

namespace qlasso {

/// Sparse coefficient vector keyed by feature index.
class SparseBeta {
 public:
  SparseBeta() = default;

  void set(int index, double value) { entries_[index] = value; }
  double get(int index) const {
    auto it = entries_.find(index);
    return it == entries_.end() ? 0.0 : it->second;
  }
  const std::map<int, double>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  Vector dense(Eigen::Index d) const {
    Vector out = Vector::Zero(d);
    for (const auto& [i, v] : entries_) out[i] = v;
    return out;
  }

  static SparseBeta from_dense(const Vector& beta, double drop_tol = 0.0) {
    SparseBeta out;
    for (Eigen::Index i = 0; i < beta.size(); ++i) {
      if (std::abs(beta[i]) > drop_tol) out.set(static_cast<int>(i), beta[i]);
    }
    return out;
  }

  double norm1() const {
    double s = 0.0;
    for (const auto& [i, v] : entries_) s += std::abs(v);
    return s;
  }

 private:
  std::map<int, double> entries_;
};

enum class KinkEvent { Init, Join, Cross, Stationary };

std::string kink_event_name(KinkEvent event);

struct Kink {
  double lambda = 0.0;
  SparseBeta beta;
  KinkEvent event = KinkEvent::Init;
  /// Feature index for Join/Cross events, -1 otherwise.
  int feature = -1;
};

enum class PathMode { Exact, Approximate };

/// Piecewise-linear regularisation path, kinks ordered by decreasing lambda
/// (non-strictly in Approximate mode).
class RegularisationPath {
 public:
  PathMode mode = PathMode::Exact;
  double epsilon = 0.0;
  std::vector<Kink> kinks;
  /// Set when the kink budget T stopped the solve before the path closed.
  bool truncated = false;

  bool empty() const { return kinks.empty(); }
  double lambda0() const;

  /// beta(lambda) by linear interpolation on the containing segment;
  /// returns 0 for lambda >= lambda0 and the closing extrapolation below the
  /// last kink.
  Vector eval(double lambda, Eigen::Index d) const;
};

}  // namespace qlasso
