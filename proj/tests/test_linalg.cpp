#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qlasso/active_set.hpp"
#include "test_helpers.hpp"

using namespace qlasso;

namespace {

Matrix maintained_pinv(const ActiveSetState& state, Eigen::Index n) {
  Matrix P(state.size(), n);
  for (Eigen::Index c = 0; c < n; ++c) {
    P.col(c) = state.apply_pinv(Vector::Unit(n, c));
  }
  return P;
}

}  // namespace

TEST_CASE("single unit column has its transpose as pseudo-inverse") {
  Rng rng(1);
  Vector x = testing::random_vector(5, rng);
  x.normalize();
  ActiveSetState state(5);
  state.insert(0, x);
  const Matrix P = maintained_pinv(state, 5);
  CHECK((P.row(0).transpose() - x).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("orthogonal columns give a row-scaled pseudo-inverse") {
  Matrix X = Matrix::Zero(4, 2);
  X(0, 0) = 2.0;
  X(1, 1) = 3.0;
  ActiveSetState state(4);
  state.insert(0, X.col(0));
  state.insert(1, X.col(1));
  const Matrix P = maintained_pinv(state, 4);
  CHECK(P(0, 0) == doctest::Approx(2.0 / 4.0));
  CHECK(P(1, 1) == doctest::Approx(3.0 / 9.0));
  CHECK(std::abs(P(0, 1)) < 1e-12);
}

TEST_CASE("sequential inserts match the dense SVD pseudo-inverse") {
  Rng rng(20);
  const Matrix X = testing::random_matrix(20, 6, rng);
  ActiveSetState state(20);
  for (int j = 0; j < 6; ++j) state.insert(j, X.col(j));
  const Matrix P = maintained_pinv(state, 20);
  const Matrix P_ref = testing::dense_pinv(X);
  CHECK((P - P_ref).lpNorm<Eigen::Infinity>() < 1e-8 * P_ref.lpNorm<Eigen::Infinity>() + 1e-10);
  // X_A^+ X_A = I within tolerance.
  CHECK((P * X - Matrix::Identity(6, 6)).lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("inserting a dependent column is rejected") {
  Rng rng(5);
  const Matrix X = testing::random_matrix(10, 3, rng);
  ActiveSetState state(10);
  state.insert(0, X.col(0));
  state.insert(1, X.col(1));
  const Vector dependent = 2.0 * X.col(0) - X.col(1);
  CHECK_THROWS_AS(state.insert(2, dependent), RankDeficient);
  CHECK_THROWS_AS(state.insert(3, Vector::Zero(10)), RankDeficient);
}

TEST_CASE("insert then remove restores the original state") {
  Rng rng(9);
  const Matrix X = testing::random_matrix(12, 4, rng);
  ActiveSetState state(12);
  state.insert(0, X.col(0));
  state.insert(1, X.col(1));
  const Matrix before = maintained_pinv(state, 12);
  state.insert(2, X.col(2));
  state.remove(2);
  const Matrix after = maintained_pinv(state, 12);
  CHECK((before - after).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("removing the last column empties the state") {
  Rng rng(2);
  ActiveSetState state(6);
  state.insert(4, testing::random_vector(6, rng));
  state.remove(4);
  CHECK(state.empty());
  CHECK_THROWS_AS(state.remove(4), NotActive);
}

TEST_CASE("removing a middle column matches a dense rebuild") {
  Rng rng(33);
  const Matrix X = testing::random_matrix(15, 5, rng);
  ActiveSetState state(15);
  for (int j = 0; j < 5; ++j) state.insert(j, X.col(j));
  state.remove(2);
  Matrix retained(15, 4);
  retained << X.col(0), X.col(1), X.col(3), X.col(4);
  const Matrix P_ref = testing::dense_pinv(retained);
  const Matrix P = maintained_pinv(state, 15);
  CHECK((P - P_ref).lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("residual projection") {
  Rng rng(8);
  const Matrix X = testing::random_matrix(10, 3, rng);
  ActiveSetState state(10);
  SUBCASE("empty active set projects to the identity") {
    const Vector y = testing::random_vector(10, rng);
    CHECK((state.project_residual(y) - y).lpNorm<Eigen::Infinity>() == 0.0);
  }
  for (int j = 0; j < 3; ++j) state.insert(j, X.col(j));
  SUBCASE("vectors in the column span project to zero") {
    const Vector y = X * (Vector(3) << 1, -2, 0.5).finished();
    CHECK(state.project_residual(y).lpNorm<Eigen::Infinity>() < 1e-10);
  }
  SUBCASE("residual is orthogonal to the active columns") {
    const Vector y = testing::random_vector(10, rng);
    const Vector r = state.project_residual(y);
    CHECK((X.transpose() * r).lpNorm<Eigen::Infinity>() < 1e-8 * y.norm());
    const Matrix P = Matrix::Identity(10, 10) - X * testing::dense_pinv(X);
    CHECK((r - P * y).lpNorm<Eigen::Infinity>() < 1e-8);
  }
}

TEST_CASE("random insert/remove sequences stay numerically faithful") {
  Rng rng(77);
  const Eigen::Index n = 30;
  const Matrix X = testing::random_matrix(n, 12, rng);
  ActiveSetState state(n);
  std::vector<int> in;
  for (int step = 0; step < 60; ++step) {
    if (in.empty() || (in.size() < 12 && rng.bernoulli(0.6))) {
      std::vector<int> out;
      for (int j = 0; j < 12; ++j) {
        if (!state.contains(j)) out.push_back(j);
      }
      if (out.empty()) continue;
      const int j = out[rng.uniform_index(out.size())];
      state.insert(j, X.col(j));
      in.push_back(j);
    } else {
      const std::size_t k = rng.uniform_index(in.size());
      state.remove(in[k]);
      in.erase(in.begin() + static_cast<std::ptrdiff_t>(k));
    }
    if (state.empty()) continue;
    Matrix XA(n, state.size());
    for (Eigen::Index c = 0; c < state.size(); ++c) {
      XA.col(c) = X.col(state.active()[static_cast<std::size_t>(c)]);
    }
    const Matrix P_ref = testing::dense_pinv(XA);
    for (int v = 0; v < 10; ++v) {
      const Vector probe = testing::random_vector(n, rng);
      const Vector got = state.apply_pinv(probe);
      const Vector want = P_ref * probe;
      CHECK((got - want).norm() <= 1e-7 * (1.0 + want.norm()));
    }
  }
}

TEST_CASE("mu and theta recomputed densely agree with the maintained factors") {
  Rng rng(4);
  const Matrix X = testing::random_matrix(18, 5, rng);
  const Vector y = testing::random_vector(18, rng);
  const Vector eta = (Vector(5) << 1, -1, 1, 1, -1).finished();
  ActiveSetState state(18);
  for (int j = 0; j < 5; ++j) state.insert(j, X.col(j));
  const Matrix P = testing::dense_pinv(X);
  const Vector mu_ref = P * y;
  const Vector theta_ref = (X.transpose() * X).ldlt().solve(eta);
  CHECK((state.apply_pinv(y) - mu_ref).lpNorm<Eigen::Infinity>() < 1e-8);
  CHECK((state.solve_gram(eta) - theta_ref).lpNorm<Eigen::Infinity>() < 1e-8);
}
