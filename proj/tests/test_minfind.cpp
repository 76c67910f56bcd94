#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qlasso/minfind.hpp"
#include "test_helpers.hpp"

using namespace qlasso;

namespace {

std::function<double(std::uint64_t)> from(const std::vector<double>& v) {
  return [&v](std::uint64_t k) { return v[k]; };
}

}  // namespace

TEST_CASE("exact search finds the minimum with the lowest-index tie rule") {
  Rng rng(1);
  QueryLedger ledger;
  SUBCASE("simple instance") {
    const std::vector<double> v{3, 1, 2};
    auto [idx, value] = min_exact_sim(from(v), 3, 0.01, ledger, rng);
    CHECK(idx == 1);
    CHECK(value == 1.0);
  }
  SUBCASE("ties break to the lowest index") {
    const std::vector<double> v{2, 2, 2};
    CHECK(min_exact_sim(from(v), 3, 0.01, ledger, rng).first == 0);
  }
  SUBCASE("matches a linear scan on a seeded vector") {
    Rng data_rng(2);
    std::vector<double> v(500);
    for (double& x : v) x = data_rng.normal();
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (v[k] < v[best]) best = k;
    }
    CHECK(min_exact_sim(from(v), 500, 0.01, ledger, rng).first == best);
  }
  SUBCASE("empty domain") {
    CHECK_THROWS_AS(min_exact_sim(from({}), 0, 0.01, ledger, rng), EmptyDomain);
  }
}

TEST_CASE("maximization dual: max-finding over v equals min-finding over -v") {
  Rng data_rng(3);
  Rng rng(4);
  QueryLedger ledger;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(50);
    for (double& x : v) x = data_rng.normal();
    auto [idx, value] =
        min_exact_sim([&](std::uint64_t k) { return -v[k]; }, 50, 0.01, ledger, rng);
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (v[k] > v[best]) best = k;
    }
    CHECK(idx == best);
    CHECK(-value == v[best]);
  }
}

TEST_CASE("charged search queries scale as sqrt(m)") {
  const double r100 = static_cast<double>(search_query_count(400, 0.01)) /
                      static_cast<double>(search_query_count(100, 0.01));
  CHECK(r100 > 1.9);
  CHECK(r100 < 2.1);
  QueryLedger ledger;
  Rng rng(5);
  std::vector<double> v(100, 1.0);
  min_exact_sim(from(v), 100, 0.01, ledger, rng);
  CHECK(ledger.charged_quantum_queries() == search_query_count(100, 0.01));
}

namespace {

NoisyValueOracle make_oracle(const std::vector<double>& v, double eps,
                             double delta2, Rng& noise_rng) {
  NoisyValueOracle o;
  o.m = v.size();
  o.epsilon = eps;
  o.delta2 = delta2;
  o.truth = [&v](std::uint64_t k) { return v[k]; };
  o.evaluator = [&v, eps, &noise_rng](std::uint64_t k) {
    return v[k] + noise_rng.uniform(-eps, eps);
  };
  return o;
}

double admissible_delta2(std::size_t m, double delta1) {
  return 0.99 * delta1 * delta1 /
         (static_cast<double>(m) * std::log(1.0 / delta1));
}

}  // namespace

TEST_CASE("approximate search returns 2eps-qualifying indices") {
  Rng rng(6);
  QueryLedger ledger;
  SUBCASE("an exact oracle degenerates to the minimum") {
    const std::vector<double> v{3, 1, 2};
    NoisyValueOracle o = make_oracle(v, 0.0, 0.0, rng);
    CHECK(min_approx_sim(o, 0.0, 0.05, ledger, rng) == 1);
  }
  SUBCASE("threshold-set membership") {
    const std::vector<double> v{3, 1, 2};
    Rng noise(7);
    NoisyValueOracle o = make_oracle(v, 0.6, admissible_delta2(3, 0.05), noise);
    for (int t = 0; t < 50; ++t) {
      const std::uint64_t k = min_approx_sim(o, 0.6, 0.05, ledger, rng);
      CHECK((k == 1 || k == 2));
    }
  }
  SUBCASE("adversarial mode still satisfies the guarantee deterministically") {
    Rng noise(8);
    std::vector<double> v(60);
    for (double& x : v) x = noise.normal();
    const double eps = 0.3;
    NoisyValueOracle o = make_oracle(v, eps, admissible_delta2(60, 0.05), noise);
    MinFindConfig cfg;
    cfg.mode = NoiseMode::Adversarial;
    const double vmin = *std::min_element(v.begin(), v.end());
    for (int t = 0; t < 100; ++t) {
      const std::uint64_t k = min_approx_sim(o, eps, 0.05, ledger, rng, cfg);
      CHECK(v[k] <= vmin + 2.0 * eps + 1e-12);
    }
  }
  SUBCASE("Monte Carlo frequency on a seeded noisy oracle") {
    Rng data_rng(9);
    std::vector<double> v(300);
    for (double& x : v) x = data_rng.normal();
    const double eps = 0.2;
    const double delta1 = 0.05;
    const double vmin = *std::min_element(v.begin(), v.end());
    Rng noise(10);
    NoisyValueOracle o = make_oracle(v, eps, admissible_delta2(300, delta1), noise);
    int ok = 0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t k = min_approx_sim(o, eps, delta1, ledger, rng);
      if (v[k] <= vmin + 2.0 * eps + 1e-12) ++ok;
    }
    CHECK(ok >= static_cast<int>(((1.0 - delta1) - 0.02) * trials));
  }
  SUBCASE("an oracle with too large delta2 is rejected") {
    const std::vector<double> v{1, 2};
    Rng noise(11);
    NoisyValueOracle o = make_oracle(v, 0.1, 0.5, noise);
    CHECK_THROWS_AS(min_approx_sim(o, 0.1, 0.05, ledger, rng), ContractViolation);
  }
}

TEST_CASE("failure injection returns wrong indices at roughly rate delta") {
  Rng rng(12);
  QueryLedger ledger;
  std::vector<double> v(20);
  Rng data_rng(13);
  for (double& x : v) x = data_rng.normal();
  MinFindConfig cfg;
  cfg.inject_failures = true;
  const double delta = 0.2;
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] < v[best]) best = k;
  }
  int wrong = 0;
  for (int t = 0; t < 2000; ++t) {
    if (min_exact_sim(from(v), 20, delta, ledger, rng, cfg).first != best) ++wrong;
  }
  // Failure rate delta, and an injected "failure" can still hit the argmin.
  CHECK(wrong > 200);
  CHECK(wrong < 500);
}
