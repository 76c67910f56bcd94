#include "qlasso/verify.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace qlasso {

KktReport kkt_check(const LassoProblem& problem, const Vector& beta,
                    double lambda, double epsilon) {
  if (beta.size() != problem.d()) {
    throw DimensionMismatch("beta length does not match d");
  }
  if (!(lambda > 0.0)) throw Error("kkt_check requires lambda > 0");
  if (epsilon < 0.0 || epsilon >= 1.0) throw Error("kkt_check requires epsilon in [0,1)");

  KktReport report;
  report.lambda = lambda;
  report.epsilon = epsilon;
  const Vector corr = problem.X().transpose() * (problem.y() - problem.X() * beta);
  report.coordinates.reserve(static_cast<std::size_t>(problem.d()));
  for (Eigen::Index j = 0; j < problem.d(); ++j) {
    KktCoordinate c;
    c.index = static_cast<int>(j);
    c.correlation = corr[j];
    c.active = beta[j] != 0.0;
    if (c.active) {
      const double signed_corr = corr[j] * (beta[j] > 0.0 ? 1.0 : -1.0);
      c.slack = std::min(signed_corr - lambda * (1.0 - epsilon),
                         lambda - signed_corr);
    } else {
      c.slack = lambda - std::abs(corr[j]);
    }
    c.pass = c.slack >= -kKktTol;
    report.pass = report.pass && c.pass;
    report.coordinates.push_back(c);
  }
  return report;
}

double duality_gap(const LassoProblem& problem, const Vector& beta,
                   double lambda) {
  if (beta.size() != problem.d()) {
    throw DimensionMismatch("beta length does not match d");
  }
  if (!(lambda > 0.0)) throw Error("duality_gap requires lambda > 0");
  Vector kappa = problem.X() * beta - problem.y();
  const double dual_norm = (problem.X().transpose() * kappa).lpNorm<Eigen::Infinity>();
  if (dual_norm > lambda) kappa *= lambda / dual_norm;
  // Primal minus dual at the (rescaled, hence feasible) dual point; when no
  // rescale was needed this reduces to lambda ||beta||_1 + (kappa + y)^T kappa.
  const double primal = 0.5 * (problem.y() - problem.X() * beta).squaredNorm() +
                        lambda * beta.lpNorm<1>();
  const double dual = -0.5 * kappa.squaredNorm() - problem.y().dot(kappa);
  // Weak duality makes the gap nonnegative up to roundoff.
  return std::max(primal - dual, 0.0);
}

Vector lasso_oracle(const LassoProblem& problem, double lambda, double tol,
                    const Vector* warm_start) {
  if (!(lambda > 0.0)) throw Error("lasso_oracle requires lambda > 0");
  if (!(tol > 0.0)) throw Error("lasso_oracle requires tol > 0");

  Eigen::JacobiSVD<Matrix> svd(problem.X());
  const double sigma_max = svd.singularValues().size() > 0
                               ? svd.singularValues().maxCoeff()
                               : 0.0;
  if (sigma_max == 0.0) return Vector::Zero(problem.d());
  const double step = 1.0 / (sigma_max * sigma_max);

  Vector beta = warm_start && warm_start->size() == problem.d()
                    ? *warm_start
                    : Vector::Zero(problem.d());
  Vector momentum = beta;
  double t_accel = 1.0;
  constexpr long kMaxIterations = 1000000;
  constexpr long kRestartEvery = 200;

  for (long it = 0; it < kMaxIterations; ++it) {
    if (it % 10 == 0 && duality_gap(problem, beta, lambda) <= tol) return beta;
    if (it % kRestartEvery == 0) {
      momentum = beta;
      t_accel = 1.0;
    }
    const Vector grad =
        problem.X().transpose() * (problem.X() * momentum - problem.y());
    Vector next = momentum - step * grad;
    const double thresh = step * lambda;
    for (Eigen::Index j = 0; j < next.size(); ++j) {
      next[j] = std::copysign(std::max(std::abs(next[j]) - thresh, 0.0), next[j]);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_accel * t_accel));
    momentum = next + ((t_accel - 1.0) / t_next) * (next - beta);
    beta = std::move(next);
    t_accel = t_next;
  }
  throw NoConvergence("proximal gradient failed to reach the gap tolerance");
}

nlohmann::json PathCertificate::to_json() const {
  return {{"epsilon", epsilon},
          {"grid", grid_per_segment},
          {"max_violation", max_violation},
          {"worst_lambda", worst_lambda},
          {"pass", pass}};
}

PathCertificate certify_path(const RegularisationPath& path,
                             const LassoProblem& problem, double epsilon,
                             int grid_per_segment) {
  if (path.empty()) throw EmptyPath("cannot certify an empty path");
  if (grid_per_segment < 1) throw Error("grid size must be positive");

  PathCertificate cert;
  cert.epsilon = epsilon;
  cert.grid_per_segment = grid_per_segment;
  cert.max_violation = -std::numeric_limits<double>::infinity();
  cert.worst_lambda = path.kinks.front().lambda;

  for (std::size_t t = 0; t + 1 < path.kinks.size(); ++t) {
    const double hi = path.kinks[t].lambda;
    const double lo = path.kinks[t + 1].lambda;
    if (hi <= lo) continue;
    for (int g = 0; g < grid_per_segment; ++g) {
      // Open at lo = 0 (the gap criterion needs lambda > 0).
      const double frac = (g + 1.0) / (grid_per_segment + 1.0);
      const double lambda = lo + (hi - lo) * frac;
      if (!(lambda > 0.0)) continue;
      const Vector beta = path.eval(lambda, problem.d());
      const double gap = duality_gap(problem, beta, lambda);
      const double budget = lambda * epsilon * beta.lpNorm<1>() + kCertifySlack;
      const double violation =
          (gap - budget) / std::max(lambda * epsilon * beta.lpNorm<1>(), kCertifySlack);
      if (violation > cert.max_violation) {
        cert.max_violation = violation;
        cert.worst_lambda = lambda;
      }
    }
  }
  if (!std::isfinite(cert.max_violation)) cert.max_violation = 0.0;
  cert.pass = cert.max_violation <= 0.0;
  return cert;
}

}  // namespace qlasso
