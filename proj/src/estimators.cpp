#include "qlasso/estimators.hpp"

#include <algorithm>
#include <cmath>

namespace qlasso {

NoiseMode noise_mode_from_string(const std::string& name) {
  if (name == "stochastic") return NoiseMode::Stochastic;
  if (name == "adversarial") return NoiseMode::Adversarial;
  if (name == "exact") return NoiseMode::Exact;
  throw ParseError("unknown noise mode: " + name);
}

std::string noise_mode_name(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::Stochastic: return "stochastic";
    case NoiseMode::Adversarial: return "adversarial";
    case NoiseMode::Exact: return "exact";
  }
  return "?";
}

void EstimateContract::validate() const {
  if (!(epsilon > 0.0)) throw Error("estimate contract requires epsilon > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("estimate contract requires delta in (0,1)");
}

std::uint64_t classical_sample_count(double epsilon, double delta) {
  return static_cast<std::uint64_t>(
      std::ceil(2.0 / (epsilon * epsilon) * std::log(2.0 / delta)));
}

std::uint64_t quantum_query_count(double epsilon, double delta) {
  return static_cast<std::uint64_t>(
      std::ceil(kQuantumC / epsilon * std::log(1.0 / delta)));
}

namespace {

double error_scale(double a_inf, double a_1, double u_inf, double u_1) {
  return std::min(a_inf * u_1, a_1 * u_inf);
}

}  // namespace

double inner_product_classical(const SamplableVector& a_col,
                               const Eigen::VectorXd& u,
                               const EstimateContract& contract, Rng& rng,
                               QueryLedger& ledger) {
  contract.validate();
  if (static_cast<std::size_t>(u.size()) != a_col.size()) {
    throw DimensionMismatch("inner product operands differ in length");
  }
  const double a1 = a_col.norm1();
  if (a1 == 0.0 || u.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;

  const std::uint64_t q = classical_sample_count(contract.epsilon, contract.delta);
  ledger.charge_sample_draws(q);

  const double exact = a_col.dense().dot(u);
  switch (contract.mode) {
    case NoiseMode::Exact:
      return exact;
    case NoiseMode::Adversarial: {
      const double bound = contract.epsilon *
          error_scale(a_col.norm_inf(), a1, u.lpNorm<Eigen::Infinity>(), u.lpNorm<1>());
      return exact + (rng.bernoulli(0.5) ? bound : -bound);
    }
    case NoiseMode::Stochastic:
      break;
  }

  double sum = 0.0;
  for (std::uint64_t k = 0; k < q; ++k) {
    const auto [i, sign] = a_col.sample(rng);
    sum += a1 * u[static_cast<Eigen::Index>(i)] * sign;
  }
  return sum / static_cast<double>(q);
}

double amp_est_sim(double a, std::uint64_t M, NoiseMode mode, Rng& rng,
                   QueryLedger& ledger) {
  if (a < 0.0 || a > 1.0) throw Error("amplitude must lie in [0,1]");
  if (M < 1) throw Error("amplitude estimation requires M >= 1");
  ledger.charge_quantum(M);

  const double Md = static_cast<double>(M);
  const double bound = std::sqrt(a * (1.0 - a)) / Md + 1.0 / (Md * Md);
  double estimate = a;
  switch (mode) {
    case NoiseMode::Exact:
      break;
    case NoiseMode::Adversarial:
      estimate = a + (rng.bernoulli(0.5) ? bound : -bound);
      break;
    case NoiseMode::Stochastic:
      if (rng.bernoulli(0.9)) {
        estimate = a + rng.uniform(-bound, bound);
      } else {
        estimate = a + rng.uniform(-2.0 * bound, 2.0 * bound);
      }
      break;
  }
  return std::clamp(estimate, 0.0, 1.0);
}

double inner_product_quantum_sim(const Eigen::VectorXd& a_col,
                                 const SamplableVector& u,
                                 const EstimateContract& contract, Rng& rng,
                                 QueryLedger& ledger) {
  contract.validate();
  if (static_cast<std::size_t>(a_col.size()) != u.size()) {
    throw DimensionMismatch("inner product operands differ in length");
  }
  ledger.charge_quantum(quantum_query_count(contract.epsilon, contract.delta));

  const Eigen::VectorXd u_dense = u.dense();
  const double scale = error_scale(a_col.lpNorm<Eigen::Infinity>(), a_col.lpNorm<1>(),
                                   u.norm_inf(), u.norm1());
  if (scale == 0.0) return 0.0;

  // Amplitudes of the positive and negative parts of the inner product; both
  // lie in [0,1] because each partial sum is dominated by either norm
  // product.
  double pos = 0.0, neg = 0.0;
  for (Eigen::Index i = 0; i < a_col.size(); ++i) {
    const double term = a_col[i] * u_dense[i];
    if (term > 0.0) pos += term; else neg -= term;
  }
  const double a_plus = pos / scale;
  const double a_minus = neg / scale;

  const double part_bound = contract.epsilon / 2.0;
  double e_plus = 0.0, e_minus = 0.0;
  switch (contract.mode) {
    case NoiseMode::Exact:
      break;
    case NoiseMode::Adversarial:
      e_plus = rng.bernoulli(0.5) ? part_bound : -part_bound;
      e_minus = rng.bernoulli(0.5) ? part_bound : -part_bound;
      break;
    case NoiseMode::Stochastic: {
      // Amplified amplitude estimation succeeds with probability 1 - delta;
      // the failure branch may double the per-part error.
      const double cap = rng.bernoulli(1.0 - contract.delta) ? part_bound
                                                             : 2.0 * part_bound;
      e_plus = rng.uniform(-cap, cap);
      e_minus = rng.uniform(-cap, cap);
      break;
    }
  }
  const double est_plus = std::clamp(a_plus + e_plus, 0.0, 1.0);
  const double est_minus = std::clamp(a_minus + e_minus, 0.0, 1.0);
  return scale * (est_plus - est_minus);
}

double ratio_error_bound(double a, double b, double eps_a, double eps_b) {
  if (b == 0.0) throw PreconditionViolated("ratio bound requires b != 0");
  if (eps_a < 0.0 || eps_b < 0.0) throw PreconditionViolated("error bounds must be nonnegative");
  if (eps_b > std::abs(b) / 2.0) {
    throw PreconditionViolated("ratio bound requires eps_b <= |b|/2");
  }
  // 2(|a|/|b|)(eps_a/|a| + eps_b/|b|); the |a| factors cancel in the first
  // term, which keeps a = 0 well defined.
  return 2.0 * (eps_a / std::abs(b) +
                std::abs(a) * eps_b / (b * b));
}

}  // namespace qlasso
