#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tgeom/sigma_core.hpp"
#include "tgeom/spaces.hpp"

using namespace tgeom;

namespace {
const SigmaSpace e2 = make_euclidean(2);
const SigmaSpace e3 = make_euclidean(3);
const SigmaSpace m2 = make_minkowski(2);
}  // namespace

TEST_SUITE_BEGIN("sigma_core");

TEST_CASE("sigma: basic values") {
  CHECK(sigma(e2, {0, 0}, {3, 4}) == doctest::Approx(12.5).epsilon(1e-14));
  CHECK(sigma(e2, {1.5, -2.0}, {1.5, -2.0}) == 0.0);
  CHECK(sigma(m2, {0, 0}, {1, 1}) == 0.0);  // null separation
}

TEST_CASE("sigma: domain errors") {
  CHECK_THROWS_AS(sigma(e2, {0, 0, 0}, {1, 1}), DomainError);
  CHECK_THROWS_AS(sigma(e2, Point::from_id(0), {1, 1}), DomainError);
  const SigmaSpace tab = make_tabulated(Eigen::MatrixXd::Zero(2, 2));
  CHECK_THROWS_AS(sigma(tab, Point::from_id(0), Point::from_id(5)), DomainError);
}

TEST_CASE("gamma: scalar product cases") {
  CHECK(gamma(e2, {0, 0}, {1, 0}, {0, 1}) == 0.0);
  const Point p0{0.3, -1.2}, p1{2.0, 0.7};
  CHECK(gamma(e2, p0, p1, p1) == doctest::Approx(2.0 * sigma(e2, p0, p1)));
  CHECK(gamma(e2, p0, p0, p1) == 0.0);
}

TEST_CASE("gamma: symmetric in the last two arguments") {
  oracle::Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Point a(rng.point(3)), b(rng.point(3)), c(rng.point(3));
    CHECK(gamma(e3, a, b, c) == gamma(e3, a, c, b));
  }
}

TEST_CASE("two_point_scalar: examples") {
  CHECK(two_point_scalar(e2, {0, 0}, {1, 0}, {5, 5}, {6, 5}) ==
        doctest::Approx(1.0).epsilon(1e-14));
  const Point p0{0.1, 0.2}, p1{1.0, -0.4}, p2{-0.3, 2.0};
  CHECK(two_point_scalar(e2, p0, p1, p0, p2) ==
        doctest::Approx(gamma(e2, p0, p1, p2)).epsilon(1e-14));
  CHECK(two_point_scalar(m2, {0, 0}, {1, 0}, {0, 0}, {0, 1}) == 0.0);
}

TEST_CASE("two_point_scalar: coordinate dot-product oracle") {
  oracle::Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const auto p0 = rng.point(3), p1 = rng.point(3);
    const auto q0 = rng.point(3), q1 = rng.point(3);
    const double expected = oracle::dot(oracle::sub(p1, p0), oracle::sub(q1, q0));
    const double got =
        two_point_scalar(e3, Point(p0), Point(p1), Point(q0), Point(q1));
    CHECK(std::fabs(got - expected) <= 1e-12 * std::max(1.0, std::fabs(expected)));
  }
}

TEST_CASE("gram_matrix: metric oracle") {
  const std::vector<Point> others{{1, 0}, {0, 1}};
  const Eigen::MatrixXd g = gram_matrix(e2, {0, 0}, others);
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(0, 1) == doctest::Approx(0.0));
  CHECK(g(1, 1) == doctest::Approx(1.0));

  const std::vector<Point> dup{{1, 0}, {1, 0}};
  const Eigen::MatrixXd gd = gram_matrix(e2, {0, 0}, dup);
  CHECK(lu_det(gd) == doctest::Approx(0.0));

  const Eigen::MatrixXd gm = gram_matrix(m2, {0, 0}, others);
  CHECK(gm(0, 0) == doctest::Approx(1.0));
  CHECK(gm(1, 1) == doctest::Approx(-1.0));
  CHECK(gm(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("gram_det: examples") {
  CHECK(gram_det(e2, {{0, 0}, {1, 0}}) == doctest::Approx(1.0));  // F_1 = 2 sigma
  CHECK(gram_det(e2, {{0, 0}, {1, 0}, {0, 1}}) == doctest::Approx(1.0));
  CHECK(gram_det(e2, {{0, 0}, {1, 0}, {2, 0}}) == doctest::Approx(0.0));
}

TEST_CASE("squared_length: geometric alias") {
  CHECK(squared_length(e2, {{0, 0}, {1, 0}, {0, 1}}) ==
        gram_det(e2, {{0, 0}, {1, 0}, {0, 1}}));
  // repeated point: exactly zero, not approximately
  CHECK(squared_length(e3, {{1, 2, 3}, {0, 0, 1}, {1, 2, 3}}) == 0.0);
  CHECK(squared_length(m2, {{0, 0}, {2, 0}}) == doctest::Approx(4.0));
}

TEST_CASE("mv_scalar_product: contract and oracle") {
  const Multivector a{{0, 0}, {1, 0}};
  const Multivector b{{5, 5}, {6, 5}};
  CHECK(mv_scalar_product(e2, a, b) ==
        two_point_scalar(e2, a[0], a[1], b[0], b[1]));

  const Multivector t1{{0, 0}, {1, 0}, {0, 1}};
  const Multivector t2{{0, 0}, {2, 0}, {0, 2}};
  CHECK(mv_scalar_product(e2, t1, t2) == doctest::Approx(4.0));
  CHECK(mv_scalar_product(e2, t1, t2) == mv_scalar_product(e2, t2, t1));

  CHECK_THROWS_AS(mv_scalar_product(e2, t1, a), ContractError);
}

TEST_CASE("mv_scalar_product: skewed pair pins the entry orientation") {
  // rows from A, columns from B; entry (i,k) must be (P0Pi . Q0Qk)
  const Multivector a{{0, 0}, {1, 0}, {0, 1}};
  const Multivector b{{0, 0}, {1, 1}, {1, 0}};
  // dot-product matrix [[1,1],[1,0]] -> det -1
  CHECK(mv_scalar_product(e2, a, b) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("mv_scalar_product: (A.A) equals F_n") {
  oracle::Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    std::vector<Point> pts;
    for (int k = 0; k < 4; ++k) pts.emplace_back(rng.point(3));
    const Multivector mv(pts);
    const double self = mv_scalar_product(e3, mv, mv);
    const double f = gram_det(e3, mv);
    CHECK(std::fabs(self - f) <= 1e-12 * std::max(1.0, std::fabs(f)));
  }
}

TEST_CASE("mv_length: case split") {
  const SignedLength l = mv_length(e2, {{0, 0}, {3, 4}});
  CHECK(l.squared == doctest::Approx(25.0));
  CHECK(l.magnitude == doctest::Approx(5.0));
  CHECK_FALSE(l.imaginary);

  CHECK(mv_length(e2, {{1, 1}, {1, 1}}).magnitude == 0.0);

  const SignedLength lm = mv_length(m2, {{0, 0}, {0, 1}});
  CHECK(lm.squared == doctest::Approx(-1.0));
  CHECK(lm.magnitude == doctest::Approx(1.0));
  CHECK(lm.imaginary);
}

TEST_CASE("gram_det: invariant under permutation of non-base points") {
  oracle::Rng rng(47);
  std::vector<Point> pts;
  for (int k = 0; k < 5; ++k) pts.emplace_back(rng.point(4));
  const SigmaSpace e4 = make_euclidean(4);
  const double base = gram_det(e4, Multivector(pts));
  std::vector<Point> perm = pts;
  std::swap(perm[1], perm[3]);
  std::swap(perm[2], perm[4]);
  CHECK(gram_det(e4, Multivector(perm)) ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("restrict: contraction preserves sigma") {
  const SigmaSpace half = restrict_space(
      e2, Halfspace{{1.0, 0.0}, 0.0});  // keep x >= 0
  CHECK(sigma(half, {1, 0}, {2, 0}) == doctest::Approx(0.5));
  CHECK(sigma(half, {1, 0}, {2, 0}) == sigma(e2, {1, 0}, {2, 0}));
  CHECK_THROWS_AS(sigma(half, {-1, 0}, {2, 0}), DomainError);

  // idempotent: restricting again with the same region changes nothing
  const SigmaSpace again = restrict_space(half, Halfspace{{1.0, 0.0}, 0.0});
  oracle::Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    auto a = rng.point(2, 0.0, 3.0), b = rng.point(2, 0.0, 3.0);
    CHECK(sigma(again, Point(a), Point(b)) == sigma(half, Point(a), Point(b)));
  }
}

TEST_CASE("restrict: empty id subset is a contract error") {
  const SigmaSpace tab = make_tabulated(Eigen::MatrixXd::Zero(3, 3));
  CHECK_THROWS_AS(restrict_space(tab, IdSubset{{}}), ContractError);
  const SigmaSpace sub = restrict_space(tab, IdSubset{{0, 2}});
  CHECK(sigma(sub, Point::from_id(0), Point::from_id(2)) == 0.0);
  CHECK_THROWS_AS(sigma(sub, Point::from_id(0), Point::from_id(1)), DomainError);
}

TEST_CASE("world function invariants hold on every backend") {
  std::vector<SigmaSpace> spaces{
      e2, e3, m2, make_minkowski(4),
      make_deformed(e2, ScaleDistortion{2.5}),
      make_deformed(m2, AffineCapDistortion{0.25, 1.0})};
  oracle::Rng rng(71);
  for (const auto& s : spaces) {
    for (int t = 0; t < 30; ++t) {
      const Point a(rng.point(static_cast<std::size_t>(s.dim())));
      const Point b(rng.point(static_cast<std::size_t>(s.dim())));
      CHECK(s.sigma(a, b) == s.sigma(b, a));
      CHECK(s.sigma(a, a) == 0.0);
    }
  }
}

TEST_SUITE_END();
