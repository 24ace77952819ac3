#include <doctest.h>

#include <Eigen/Dense>
#include <cstring>

#include "seqsmooth/grid.hpp"
#include "seqsmooth/rng.hpp"
#include "seqsmooth/smallmat.hpp"

using namespace seqsmooth;

namespace {

Eigen::MatrixXd to_eigen(const SmallMat& m) {
  Eigen::MatrixXd out(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) out(i, j) = m.at(i, j);
  return out;
}

// Random SPD matrix A = B B^T + d I together with its dense inverse.
std::pair<SmallMat, SmallMat> random_spd_with_inverse(int n, Rng& rng) {
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = 2.0 * rng.uniform01() - 1.0;
  Eigen::MatrixXd a = b * b.transpose() +
                      (0.1 + rng.uniform01()) * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd a_inv = a.inverse();
  SmallMat ma, mi;
  ma.n = mi.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ma.at(i, j) = a(i, j);
      mi.at(i, j) = a_inv(i, j);
    }
  return {ma, mi};
}

}  // namespace

TEST_CASE("rank-one inverse update of the identity") {
  SmallMat eye = SmallMat::identity_scaled(2, 1.0);
  SmallVec e1 = SmallVec::zero(2);
  e1[0] = 1.0;
  const SmallMat out = rank_one_inverse_update(eye, e1, 1.0);
  CHECK(out.at(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(out.at(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(out.at(0, 1) == doctest::Approx(0.0));
  CHECK(out.at(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("zero scale returns the matrix bit-identically") {
  Rng rng(3);
  auto [a, a_inv] = random_spd_with_inverse(4, rng);
  SmallVec v = SmallVec::zero(4);
  for (int i = 0; i < 4; ++i) v[i] = rng.uniform01();
  const SmallMat out = rank_one_inverse_update(a_inv, v, 0.0);
  CHECK(std::memcmp(out.a.data(), a_inv.a.data(), sizeof(out.a)) == 0);
}

TEST_CASE("rank-one update matches dense inversion") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform01() * 6.0) % 6;
    auto [a, a_inv] = random_spd_with_inverse(n, rng);
    SmallVec v = SmallVec::zero(n);
    for (int i = 0; i < n; ++i) v[i] = 2.0 * rng.uniform01() - 1.0;
    const double w = rng.uniform01() * 3.0;

    const SmallMat updated = rank_one_inverse_update(a_inv, v, w);

    Eigen::VectorXd ve(n);
    for (int i = 0; i < n; ++i) ve(i) = v[i];
    const Eigen::MatrixXd dense =
        (to_eigen(a) + w * ve * ve.transpose()).inverse();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::fabs(updated.at(i, j) - dense(i, j)) <=
              1e-9 * std::max(1.0, std::fabs(dense(i, j))));
  }
}

TEST_CASE("rank-one update input validation") {
  SmallMat eye = SmallMat::identity_scaled(2, 1.0);
  SmallVec v = SmallVec::zero(2);
  v[0] = std::nan("");
  CHECK_THROWS_AS(rank_one_inverse_update(eye, v, 1.0), std::invalid_argument);
  v[0] = 1.0;
  CHECK_THROWS_AS(rank_one_inverse_update(eye, v, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(rank_one_inverse_update(eye, v, INFINITY),
                  std::invalid_argument);
  SmallVec wrong = SmallVec::zero(3);
  CHECK_THROWS_AS(rank_one_inverse_update(eye, wrong, 1.0),
                  std::invalid_argument);
}

TEST_CASE("solve_linear against Eigen") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform01() * 5.0);
    SmallMat a;
    a.n = n;
    SmallVec b = SmallVec::zero(n);
    Eigen::MatrixXd ae(n, n);
    Eigen::VectorXd be(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        a.at(i, j) = 2.0 * rng.uniform01() - 1.0;
        ae(i, j) = a.at(i, j);
      }
      b[i] = 2.0 * rng.uniform01() - 1.0;
      be(i) = b[i];
    }
    if (std::fabs(ae.determinant()) < 1e-4) continue;
    SmallVec x;
    REQUIRE(solve_linear(a, b, x));
    const Eigen::VectorXd xe = ae.fullPivLu().solve(be);
    for (int i = 0; i < n; ++i)
      CHECK(std::fabs(x[i] - xe(i)) <= 1e-9 * std::max(1.0, std::fabs(xe(i))));
  }
}

TEST_CASE("solve_linear reports singular systems") {
  SmallMat a;
  a.n = 2;
  a.at(0, 0) = 1.0;
  a.at(0, 1) = 2.0;
  a.at(1, 0) = 2.0;
  a.at(1, 1) = 4.0;
  SmallVec b = SmallVec::zero(2);
  b[0] = 1.0;
  SmallVec x;
  CHECK_FALSE(solve_linear(a, b, x));
}

TEST_CASE("evaluation grid basics") {
  const EvaluationGrid g(0.0, 1.0, 201);
  CHECK(g.count() == 201);
  CHECK(g.point(0) == 0.0);
  CHECK(g.point(200) == 1.0);
  CHECK(g.step() == doctest::Approx(0.005).epsilon(1e-15));
  const auto pts = g.points();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i] > pts[i - 1]);
    CHECK(std::fabs((pts[i] - pts[i - 1]) - g.step()) < 1e-12 * g.step());
  }
  CHECK_THROWS_AS(EvaluationGrid(1.0, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(EvaluationGrid(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("grid interpolation is exact on points and averages midways") {
  const EvaluationGrid g(0.0, 2.0, 5);
  const std::vector<double> vals = {1.0, 3.0, -2.0, 7.0, 4.0};
  for (int i = 0; i < g.count(); ++i)
    CHECK(g.interpolate(vals, g.point(i)) == vals[static_cast<std::size_t>(i)]);
  CHECK(g.interpolate(vals, 0.25) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g.interpolate(vals, 0.75) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(g.interpolate(vals, -0.01), std::out_of_range);
  CHECK_THROWS_AS(g.interpolate(vals, 2.01), std::out_of_range);
}

TEST_CASE("grid index_range covers the kernel reach") {
  const EvaluationGrid g(0.0, 1.0, 101);
  SUBCASE("interior window") {
    const auto [lo, hi] = g.index_range(0.5, 0.1);
    CHECK(lo <= 40);
    CHECK(hi >= 61);
    CHECK(lo >= 38);
    CHECK(hi <= 63);
  }
  SUBCASE("clamped at the boundary") {
    const auto [lo, hi] = g.index_range(0.02, 0.1);
    CHECK(lo == 0);
    CHECK(hi >= 13);
  }
  SUBCASE("disjoint window") {
    const auto [lo, hi] = g.index_range(5.0, 0.5);
    CHECK(lo == hi);
  }
  SUBCASE("infinite radius covers everything") {
    const auto [lo, hi] = g.index_range(0.5, INFINITY);
    CHECK(lo == 0);
    CHECK(hi == g.count());
  }
}
