#include "qlasso/lars.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qlasso/minfind.hpp"

namespace qlasso {

namespace {

constexpr double kDenomTol = 1e-12;

std::vector<int> inactive_indices(const ActiveSetState& state, Eigen::Index d) {
  std::vector<int> I;
  I.reserve(static_cast<std::size_t>(d) - state.active().size());
  for (int j = 0; j < d; ++j) {
    if (!state.contains(j)) I.push_back(j);
  }
  return I;
}

}  // namespace

std::pair<std::vector<double>, std::vector<int>> joining_times(
    const IterationContext& ctx, const LassoProblem& problem) {
  const std::vector<int> I = inactive_indices(*ctx.state, problem.d());
  std::vector<double> times(I.size(), 0.0);
  // With n independent active columns every remaining column lies in their
  // span, so the residual is orthogonal to it and all joining times vanish;
  // computing them from rounding noise would fabricate candidates.
  if (ctx.state->size() >= problem.n()) return {std::move(times), I};
  for (std::size_t k = 0; k < I.size(); ++k) {
    const Vector x_i = problem.X().col(I[k]);
    const double num = x_i.dot(ctx.residual_vec);
    const double dir = x_i.dot(ctx.direction_vec);
    double best = 0.0;
    for (double sign : {1.0, -1.0}) {
      const double den = sign - dir;
      if (std::abs(den) < kDenomTol) continue;
      const double t = num / den;
      if (t > 0.0 && t <= ctx.lambda_t) best = std::max(best, t);
    }
    times[k] = best;
  }
  return {std::move(times), I};
}

std::vector<double> crossing_times(const IterationContext& ctx) {
  const Eigen::Index k = ctx.state->size();
  std::vector<double> times(static_cast<std::size_t>(k), 0.0);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (ctx.theta[i] == 0.0) continue;
    const double t = ctx.mu[i] / ctx.theta[i];
    // A variable whose coefficient is 0 at lambda_t (it just joined) has a
    // crossing time of exactly lambda_t; that is not a real crossing, so
    // candidates within relative tolerance of lambda_t are discarded.
    if (t >= 0.0 && t <= ctx.lambda_t * (1.0 - 1e-12)) {
      times[static_cast<std::size_t>(i)] = t;
    }
  }
  return times;
}

namespace {

// One exact homotopy step shares everything except how the joining argmax is
// located, which the quantum-search variant routes through the simulated
// search subroutine.
using JoinSelector = std::function<std::size_t(const std::vector<double>&)>;

std::size_t argmax_lowest_index(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] > v[best]) best = k;
  }
  return best;
}

// A variable removed at lambda_t has correlation of exactly lambda_t in
// magnitude, so one sign branch of its joining-time equation returns
// lambda_t itself. Re-admitting it there would retrace the segment that
// drove its coefficient to zero with an infeasible sign, so that single
// candidate is discarded.
void suppress_immediate_rejoin(std::vector<double>& join_times,
                               const std::vector<int>& I, int last_cross_feature,
                               double lambda_t) {
  if (last_cross_feature < 0) return;
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (I[k] == last_cross_feature &&
        join_times[k] >= lambda_t * (1.0 - 1e-12)) {
      join_times[k] = 0.0;
    }
  }
}

// Mirror artifact on the crossing side: the feature that joined at lambda_t
// has a zero coefficient there, so its crossing ratio mu_i/theta_i equals
// lambda_t in real arithmetic. The generic exclusion window handles the
// well-conditioned case, but rounding near the end of the path can push the
// ratio a few ulps further out; for the known just-joined feature a candidate
// this close to lambda_t can only be that artifact, never a real crossing.
void suppress_immediate_recross(std::vector<double>& cross_times,
                                const ActiveSetState& state,
                                int last_join_feature, double lambda_t) {
  if (last_join_feature < 0 || !state.contains(last_join_feature)) return;
  const auto p = static_cast<std::size_t>(state.position(last_join_feature));
  if (cross_times[p] >= lambda_t * (1.0 - 1e-8)) cross_times[p] = 0.0;
}

SparseBeta beta_on_active(const ActiveSetState& state, const Vector& mu,
                          const Vector& theta, double lambda) {
  SparseBeta beta;
  const auto& A = state.active();
  for (std::size_t i = 0; i < A.size(); ++i) {
    beta.set(A[i], mu[static_cast<Eigen::Index>(i)] -
                       lambda * theta[static_cast<Eigen::Index>(i)]);
  }
  return beta;
}

RegularisationPath lars_exact_impl(const LassoProblem& problem, int T,
                                   const JoinSelector* select_join) {
  RegularisationPath path;
  path.mode = PathMode::Exact;

  double lambda0;
  std::vector<int> A0;
  try {
    std::tie(lambda0, A0) = lambda_max(problem);
  } catch (const AllZeroObservations&) {
    path.kinks.push_back({0.0, SparseBeta{}, KinkEvent::Init, -1});
    return path;
  }
  path.kinks.push_back({lambda0, SparseBeta{}, KinkEvent::Init, -1});

  ActiveSetState state(problem.n());
  Vector eta = Vector::Zero(0);
  const Vector c0 = problem.X().transpose() * problem.y();
  for (int j : A0) {
    state.insert(j, problem.X().col(j));
    eta.conservativeResize(eta.size() + 1);
    eta[eta.size() - 1] = c0[j] >= 0.0 ? 1.0 : -1.0;
  }

  double lambda_t = lambda0;
  int last_cross_feature = -1;
  int last_join_feature = -1;
  while (lambda_t > 0.0) {
    if (static_cast<int>(path.kinks.size()) >= T) {
      path.truncated = true;
      break;
    }

    IterationContext ctx;
    ctx.lambda_t = lambda_t;
    ctx.state = &state;
    ctx.mu = state.apply_pinv(problem.y());
    ctx.theta = state.solve_gram(eta);
    ctx.residual_vec = problem.y() - state.columns() * ctx.mu;
    ctx.direction_vec = state.columns() * ctx.theta;

    auto [join_times, I] = joining_times(ctx, problem);
    suppress_immediate_rejoin(join_times, I, last_cross_feature, lambda_t);
    std::vector<double> cross_times = crossing_times(ctx);
    suppress_immediate_recross(cross_times, state, last_join_feature, lambda_t);

    double lambda_join = 0.0;
    int join_feature = -1;
    if (!I.empty()) {
      const std::size_t k = select_join ? (*select_join)(join_times)
                                        : argmax_lowest_index(join_times);
      lambda_join = join_times[k];
      join_feature = I[k];
    }
    double lambda_cross = 0.0;
    int cross_feature = -1;
    if (!cross_times.empty()) {
      const std::size_t k = argmax_lowest_index(cross_times);
      if (cross_times[k] > 0.0) {
        lambda_cross = cross_times[k];
        cross_feature = state.active()[k];
      }
    }

    const double lambda_next = std::max(lambda_join, lambda_cross);
    if (lambda_next <= 0.0) {
      // Path closes: beta(0) = mu is the least-squares fit on A.
      path.kinks.push_back({0.0, beta_on_active(state, ctx.mu, ctx.theta, 0.0),
                            KinkEvent::Stationary, -1});
      break;
    }

    SparseBeta beta = beta_on_active(state, ctx.mu, ctx.theta, lambda_next);
    if (lambda_cross >= lambda_join) {
      beta.set(cross_feature, 0.0);
      path.kinks.push_back({lambda_next, beta, KinkEvent::Cross, cross_feature});
      const Eigen::Index p = state.position(cross_feature);
      state.remove(cross_feature);
      Vector eta_new(eta.size() - 1);
      eta_new << eta.head(p), eta.tail(eta.size() - p - 1);
      eta = std::move(eta_new);
      last_cross_feature = cross_feature;
      last_join_feature = -1;
    } else {
      last_cross_feature = -1;
      last_join_feature = join_feature;
      path.kinks.push_back({lambda_next, beta, KinkEvent::Join, join_feature});
      state.insert(join_feature, problem.X().col(join_feature));
      const double corr = problem.X().col(join_feature)
                              .dot(problem.y() - problem.X() * beta.dense(problem.d()));
      eta.conservativeResize(eta.size() + 1);
      eta[eta.size() - 1] = corr >= 0.0 ? 1.0 : -1.0;
    }
    lambda_t = lambda_next;
  }
  return path;
}

}  // namespace

RegularisationPath lars_exact(const LassoProblem& problem, int T) {
  return lars_exact_impl(problem, T, nullptr);
}

RegularisationPath lars_quantum_simple(const LassoProblem& problem, int T,
                                       double delta, QueryLedger& ledger,
                                       Rng& rng, bool inject_failures) {
  MinFindConfig mf;
  mf.inject_failures = inject_failures;
  const double delta_iter = delta / static_cast<double>(std::max(T, 1));
  JoinSelector selector = [&](const std::vector<double>& times) -> std::size_t {
    ledger.set_phase("join_search");
    // Each charged search query evaluates one joining time, an O(n) read.
    ledger.charge_entry_reads(search_query_count(times.size(), delta_iter) *
                              static_cast<std::uint64_t>(problem.n()));
    auto [k, value] = min_exact_sim(
        [&](std::uint64_t i) { return -times[i]; }, times.size(), delta_iter,
        ledger, rng, mf);
    (void)value;
    return k;
  };
  return lars_exact_impl(problem, T, &selector);
}

void ApproxConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must lie in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0,1)");
  if (T < 1) throw Error("kink budget must be positive");
  if (stationary_cap < 1) throw Error("stationary cap must be positive");
}

namespace {

double incoherence_from_state(const LassoProblem& problem,
                              const ActiveSetState& state) {
  if (state.empty()) return 0.0;
  double best = 0.0;
  for (int j = 0; j < problem.d(); ++j) {
    if (state.contains(j)) continue;
    best = std::max(best, state.apply_pinv(problem.X().col(j)).lpNorm<1>());
  }
  return best;
}

}  // namespace

RegularisationPath lars_approx(const LassoProblem& problem,
                               const ApproxConfig& config,
                               QueryLedger& ledger) {
  config.validate();
  RegularisationPath path;
  path.mode = PathMode::Approximate;
  path.epsilon = config.epsilon;

  Rng rng(config.seed);
  const double x_max = problem.X().cwiseAbs().maxCoeff();

  double lambda0;
  std::vector<int> A0;
  try {
    std::tie(lambda0, A0) = lambda_max(problem);
  } catch (const AllZeroObservations&) {
    path.kinks.push_back({0.0, SparseBeta{}, KinkEvent::Init, -1});
    return path;
  }
  path.kinks.push_back({lambda0, SparseBeta{}, KinkEvent::Init, -1});

  ActiveSetState state(problem.n());
  for (int j : A0) state.insert(j, problem.X().col(j));

  double lambda_t = lambda0;
  SparseBeta beta_t;  // approximate coefficients at lambda_t
  int stationary_run = 0;
  int last_stall_size = -1;
  int last_cross_feature = -1;
  int last_join_feature = -1;

  while (lambda_t > 0.0) {
    if (static_cast<int>(path.kinks.size()) >= config.T) {
      path.truncated = true;
      break;
    }

    // Real-valued equicorrelation direction from the current approximate
    // coefficients.
    const Vector residual_t = problem.y() - problem.X() * beta_t.dense(problem.d());
    Vector eta = (state.columns().transpose() * residual_t) / lambda_t;

    IterationContext ctx;
    ctx.lambda_t = lambda_t;
    ctx.state = &state;
    ctx.mu = state.apply_pinv(problem.y());
    ctx.theta = state.solve_gram(eta);
    ctx.residual_vec = problem.y() - state.columns() * ctx.mu;
    ctx.direction_vec = state.columns() * ctx.theta;

    auto [join_times, I] = joining_times(ctx, problem);
    suppress_immediate_rejoin(join_times, I, last_cross_feature, lambda_t);
    std::vector<double> cross_times = crossing_times(ctx);
    suppress_immediate_recross(cross_times, state, last_join_feature, lambda_t);

    double lambda_cross = 0.0;
    int cross_feature = -1;
    if (!cross_times.empty()) {
      const std::size_t k = argmax_lowest_index(cross_times);
      if (cross_times[k] > 0.0) {
        lambda_cross = cross_times[k];
        cross_feature = state.active()[k];
      }
    }

    const double alpha = config.alpha_provider
                             ? config.alpha_provider(state.active())
                             : incoherence_from_state(problem, state);
    const double shrink = 1.0 - config.epsilon / (1.0 + alpha);

    double lambda_join_tilde = 0.0;
    int join_feature = -1;
    const double join_max =
        I.empty() ? 0.0 : join_times[argmax_lowest_index(join_times)];
    if (join_max > 0.0) {
      // Per-element precisions sized from the incoherence/overlap split; the
      // resulting additive tolerance on joining times is eps0.
      double gamma = config.gamma_lower_bound.value_or(0.0);
      if (gamma <= 0.0) {
        const double denom = x_max * ctx.residual_vec.lpNorm<1>();
        gamma = denom > 0.0 ? (problem.X().transpose() * ctx.residual_vec)
                                      .lpNorm<Eigen::Infinity>() / denom
                            : 1.0;
      }
      const double eps1 = config.epsilon * (1.0 - std::min(alpha, 1.0 - 1e-9)) *
                          gamma / (2.0 * (1.0 + alpha) * (1.0 + alpha));
      const double eps0 =
          config.epsilon / (2.0 * (1.0 + alpha)) * join_max;
      const double delta1 = config.delta / (2.0 * config.T);
      const double m = static_cast<double>(I.size());
      const double delta2 =
          delta1 * delta1 / (m * std::log(1.0 / delta1));

      // Two inner-product estimates per examined element.
      ledger.set_phase("join_estimates");
      const std::uint64_t per_element =
          config.mode == ApproxMode::QuantumSim
              ? 2 * quantum_query_count(std::max(eps1, 1e-12), delta2)
              : 2 * classical_sample_count(std::max(eps1, 1e-12), delta2);
      if (config.mode == ApproxMode::QuantumSim) {
        ledger.charge_quantum(per_element * I.size());
      } else {
        ledger.charge_sample_draws(per_element * I.size());
      }

      auto noisy_time = [&](std::uint64_t k) {
        switch (config.noise) {
          case NoiseMode::Exact:
            return join_times[k];
          case NoiseMode::Adversarial:
            return join_times[k] + (rng.bernoulli(0.5) ? eps0 : -eps0);
          case NoiseMode::Stochastic:
            return join_times[k] + rng.uniform(-eps0, eps0);
        }
        return join_times[k];
      };

      std::size_t chosen;
      if (config.mode == ApproxMode::QuantumSim) {
        ledger.set_phase("join_search");
        NoisyValueOracle oracle;
        oracle.m = I.size();
        oracle.epsilon = eps0;
        oracle.delta2 = delta2;
        oracle.truth = [&](std::uint64_t k) { return -join_times[k]; };
        oracle.evaluator = [&](std::uint64_t k) { return -noisy_time(k); };
        MinFindConfig mf;
        mf.mode = config.noise;
        chosen = min_approx_sim(oracle, eps0 / 2.0, delta1, ledger, rng, mf);
      } else {
        std::vector<double> noisy(I.size());
        for (std::size_t k = 0; k < I.size(); ++k) noisy[k] = noisy_time(k);
        chosen = argmax_lowest_index(noisy);
        // Contract enforcement: the estimator error bound guarantees the
        // noisy argmax qualifies; fall back to the exact one if rounding
        // breaks that.
        if (join_times[chosen] < shrink * join_max) {
          chosen = argmax_lowest_index(join_times);
        }
      }
      join_feature = I[chosen];
      lambda_join_tilde = join_times[chosen] / shrink;
    }

    const double lambda_next =
        std::min(lambda_t, std::max(lambda_cross, lambda_join_tilde));
    if (lambda_next <= 0.0) {
      path.kinks.push_back({0.0, beta_on_active(state, ctx.mu, ctx.theta, 0.0),
                            KinkEvent::Stationary, -1});
      break;
    }

    SparseBeta beta = beta_on_active(state, ctx.mu, ctx.theta, lambda_next);
    const bool stationary = lambda_next == lambda_t;
    if (lambda_cross > 0.0 && lambda_next == lambda_cross &&
        lambda_cross >= lambda_join_tilde) {
      beta.set(cross_feature, 0.0);
      path.kinks.push_back({lambda_next, beta, KinkEvent::Cross, cross_feature});
      state.remove(cross_feature);
      stationary_run = 0;
      last_cross_feature = cross_feature;
      last_join_feature = -1;
    } else if (join_feature >= 0) {
      last_cross_feature = -1;
      last_join_feature = join_feature;
      path.kinks.push_back({lambda_next, beta,
                            stationary ? KinkEvent::Stationary : KinkEvent::Join,
                            join_feature});
      state.insert(join_feature, problem.X().col(join_feature));
      if (stationary) {
        if (++stationary_run > config.stationary_cap) {
          if (last_stall_size == static_cast<int>(state.size())) {
            throw StationaryStall("regularisation parameter failed to advance");
          }
          last_stall_size = static_cast<int>(state.size());
          stationary_run = 0;
        }
      } else {
        stationary_run = 0;
      }
    } else {
      // No joining candidate and no crossing below lambda_t: nothing can
      // move lambda, close the path at the least-squares end point.
      path.kinks.push_back({0.0, beta_on_active(state, ctx.mu, ctx.theta, 0.0),
                            KinkEvent::Stationary, -1});
      break;
    }
    beta_t = path.kinks.back().beta;
    lambda_t = lambda_next;
  }
  return path;
}

double mutual_incoherence(const LassoProblem& problem,
                          const std::vector<int>& A) {
  ActiveSetState state(problem.n());
  for (int j : A) state.insert(j, problem.X().col(j));
  return incoherence_from_state(problem, state);
}

double mutual_overlap(const LassoProblem& problem, const std::vector<int>& A) {
  ActiveSetState state(problem.n());
  for (int j : A) state.insert(j, problem.X().col(j));
  const Vector r = state.project_residual(problem.y());
  const double r1 = r.lpNorm<1>();
  if (r1 <= 1e-12 * std::max(1.0, problem.y().lpNorm<1>())) {
    throw ZeroResidual("observations lie in the span of the active columns");
  }
  const double x_max = problem.X().cwiseAbs().maxCoeff();
  return (problem.X().transpose() * r).lpNorm<Eigen::Infinity>() / (x_max * r1);
}

}  // namespace qlasso
