#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qlasso/estimators.hpp"
#include "test_helpers.hpp"

using namespace qlasso;

TEST_CASE("sample and query counts are pinned") {
  CHECK(classical_sample_count(0.05, 0.01) ==
        static_cast<std::uint64_t>(std::ceil(2.0 / 0.0025 * std::log(200.0))));
  CHECK(quantum_query_count(0.1, 0.01) ==
        static_cast<std::uint64_t>(std::ceil(8.0 / 0.1 * std::log(100.0))));
}

TEST_CASE("classical estimator on a point-mass column is exact") {
  SamplableVector e1((Eigen::VectorXd(4) << 1, 0, 0, 0).finished());
  Rng rng(1);
  QueryLedger ledger;
  EstimateContract c{0.5, 0.1, NoiseMode::Stochastic};
  const Eigen::VectorXd u = (Eigen::VectorXd(4) << 2.5, -1, 7, 0).finished();
  CHECK(inner_product_classical(e1, u, c, rng, ledger) == doctest::Approx(2.5));
}

TEST_CASE("classical estimator returns exactly zero for a zero operand") {
  SamplableVector a((Eigen::VectorXd(3) << 1, 2, 3).finished());
  Rng rng(2);
  QueryLedger ledger;
  EstimateContract c{0.1, 0.05, NoiseMode::Stochastic};
  CHECK(inner_product_classical(a, Eigen::VectorXd::Zero(3), c, rng, ledger) == 0.0);
  CHECK(ledger.sample_draws() == 0);
}

TEST_CASE("classical estimator satisfies its error bound empirically") {
  Rng data_rng(3);
  const Eigen::VectorXd a = testing::random_vector(200, data_rng);
  const Eigen::VectorXd u = testing::random_vector(200, data_rng);
  SamplableVector sv(a);
  const double exact = a.dot(u);
  const EstimateContract c{0.05, 0.01, NoiseMode::Stochastic};
  const double bound =
      c.epsilon * std::min(a.lpNorm<Eigen::Infinity>() * u.lpNorm<1>(),
                           a.lpNorm<1>() * u.lpNorm<Eigen::Infinity>());
  Rng rng(4);
  int failures = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    QueryLedger ledger;
    const double r = inner_product_classical(sv, u, c, rng, ledger);
    if (std::abs(r - exact) > bound) ++failures;
    CHECK(ledger.sample_draws() == classical_sample_count(c.epsilon, c.delta));
  }
  CHECK(failures <= 10);  // >= 99% within the bound
}

TEST_CASE("Hoeffding envelope: failure frequency stays near delta") {
  Rng data_rng(5);
  const Eigen::VectorXd a = testing::random_vector(100, data_rng);
  const Eigen::VectorXd u = testing::random_vector(100, data_rng);
  SamplableVector sv(a);
  const double exact = a.dot(u);
  const EstimateContract c{0.1, 0.05, NoiseMode::Stochastic};
  const double bound =
      c.epsilon * std::min(a.lpNorm<Eigen::Infinity>() * u.lpNorm<1>(),
                           a.lpNorm<1>() * u.lpNorm<Eigen::Infinity>());
  Rng rng(6);
  int failures = 0;
  const int N = 2000;
  for (int t = 0; t < N; ++t) {
    QueryLedger ledger;
    if (std::abs(inner_product_classical(sv, u, c, rng, ledger) - exact) > bound) {
      ++failures;
    }
  }
  CHECK(failures <= (c.delta + 3.0 * std::sqrt(c.delta / N)) * N);
}

TEST_CASE("amplitude estimation respects its error bound") {
  Rng rng(7);
  QueryLedger ledger;
  SUBCASE("a = 0 collapses the bound to 1/M^2") {
    for (int t = 0; t < 100; ++t) {
      const double est = amp_est_sim(0.0, 10, NoiseMode::Adversarial, rng, ledger);
      CHECK(std::abs(est) <= 0.01 + 1e-15);
    }
  }
  SUBCASE("direct bound arithmetic at a = 0.25, M = 100") {
    const double bound = std::sqrt(0.25 * 0.75) / 100.0 + 1e-4;
    CHECK(bound == doctest::Approx(4.4301e-3).epsilon(1e-3));
    const double est = amp_est_sim(0.25, 100, NoiseMode::Adversarial, rng, ledger);
    CHECK(std::abs(est - 0.25) <= bound + 1e-15);
  }
  SUBCASE("success branch holds in at least 90% of trials") {
    int ok = 0;
    const double bound = std::sqrt(0.25) / 50.0 + 1.0 / 2500.0;
    for (int t = 0; t < 10000; ++t) {
      const double est = amp_est_sim(0.5, 50, NoiseMode::Stochastic, rng, ledger);
      if (std::abs(est - 0.5) <= bound + 1e-15) ++ok;
    }
    CHECK(ok >= 9000);
  }
  SUBCASE("charges M queries") {
    QueryLedger fresh;
    amp_est_sim(0.3, 17, NoiseMode::Exact, rng, fresh);
    CHECK(fresh.charged_quantum_queries() == 17);
  }
}

TEST_CASE("quantum inner-product simulator") {
  Rng rng(8);
  SUBCASE("zero overlap gives zero") {
    const Eigen::VectorXd a = (Eigen::VectorXd(2) << 1, 0).finished();
    SamplableVector u((Eigen::VectorXd(2) << 0, 3).finished());
    QueryLedger ledger;
    EstimateContract c{0.1, 0.01, NoiseMode::Stochastic};
    // With no overlapping support both split amplitudes vanish and noise is
    // proportional to the amplitude scale, so repeated runs stay within it.
    const double scale = 1.0 * 3.0;
    for (int t = 0; t < 50; ++t) {
      CHECK(std::abs(inner_product_quantum_sim(a, u, c, rng, ledger)) <=
            c.epsilon * scale);
    }
    EstimateContract exact = c;
    exact.mode = NoiseMode::Exact;
    CHECK(inner_product_quantum_sim(a, u, exact, rng, ledger) == 0.0);
  }
  SUBCASE("unit-basis column stays within eps of the coordinate") {
    const Eigen::VectorXd a = (Eigen::VectorXd(3) << 1, 0, 0).finished();
    SamplableVector u((Eigen::VectorXd(3) << 0.8, -0.1, 0.1).finished());
    QueryLedger ledger;
    EstimateContract c{0.05, 0.01, NoiseMode::Adversarial};
    const double scale = std::min(1.0 * 1.0, 1.0 * 0.8);
    const double r = inner_product_quantum_sim(a, u, c, rng, ledger);
    CHECK(std::abs(r - 0.8) <= c.epsilon * scale + 1e-12);
  }
  SUBCASE("Monte Carlo bound on a seeded instance") {
    Rng data_rng(9);
    const Eigen::VectorXd a = testing::random_vector(150, data_rng);
    const Eigen::VectorXd uv = testing::random_vector(150, data_rng);
    SamplableVector u(uv);
    const double exact = a.dot(uv);
    const EstimateContract c{0.05, 0.01, NoiseMode::Stochastic};
    const double bound =
        c.epsilon * std::min(a.lpNorm<Eigen::Infinity>() * uv.lpNorm<1>(),
                             a.lpNorm<1>() * uv.lpNorm<Eigen::Infinity>());
    int failures = 0;
    for (int t = 0; t < 1000; ++t) {
      QueryLedger ledger;
      if (std::abs(inner_product_quantum_sim(a, u, c, rng, ledger) - exact) > bound) {
        ++failures;
      }
    }
    CHECK(failures <= 10);
  }
  SUBCASE("charges the pinned quantum query count") {
    const Eigen::VectorXd a = (Eigen::VectorXd(2) << 1, 1).finished();
    SamplableVector u((Eigen::VectorXd(2) << 1, 1).finished());
    QueryLedger ledger;
    EstimateContract c{0.05, 0.01, NoiseMode::Exact};
    inner_product_quantum_sim(a, u, c, rng, ledger);
    CHECK(ledger.charged_quantum_queries() == quantum_query_count(0.05, 0.01));
  }
}

TEST_CASE("ratio error bound") {
  CHECK(ratio_error_bound(2.0, 1.0, 0.0, 0.0) == 0.0);
  CHECK(ratio_error_bound(2.0, 1.0, 0.05, 0.05) == doctest::Approx(0.3));
  CHECK_THROWS_AS(ratio_error_bound(1.0, 1.0, 0.1, 0.6), PreconditionViolated);
  CHECK_THROWS_AS(ratio_error_bound(1.0, 0.0, 0.1, 0.0), PreconditionViolated);

  SUBCASE("property sweep: the bound dominates the actual ratio error") {
    Rng rng(10);
    int checked = 0;
    while (checked < 100000) {
      const double a = rng.uniform(-5.0, 5.0);
      const double b = rng.uniform(-5.0, 5.0);
      if (std::abs(b) < 1e-3) continue;
      const double eps_a = rng.uniform(0.0, 1.0);
      const double eps_b = rng.uniform(0.0, std::abs(b) / 2.0);
      const double at = a + rng.uniform(-eps_a, eps_a);
      const double bt = b + rng.uniform(-eps_b, eps_b);
      const double bound = ratio_error_bound(a, b, eps_a, eps_b);
      REQUIRE(std::abs(at / bt - a / b) <= bound + 1e-12);
      ++checked;
    }
  }
}

TEST_CASE("identical seed and contract reproduce the ledger and estimates") {
  Rng data_rng(11);
  const Eigen::VectorXd a = testing::random_vector(50, data_rng);
  const Eigen::VectorXd uv = testing::random_vector(50, data_rng);
  SamplableVector sv(a);
  const EstimateContract c{0.1, 0.05, NoiseMode::Stochastic};
  QueryLedger l1, l2;
  Rng r1(99), r2(99);
  const double v1 = inner_product_classical(sv, uv, c, r1, l1);
  const double v2 = inner_product_classical(sv, uv, c, r2, l2);
  CHECK(v1 == v2);
  CHECK(l1 == l2);
  CHECK(l1.report() == l2.report());
}
