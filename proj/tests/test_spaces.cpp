#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tgeom/sigma_core.hpp"
#include "tgeom/space_spec.hpp"
#include "tgeom/spaces.hpp"

using namespace tgeom;

namespace {

// smooth, non-quadratic world function with analytic metric
// g_ik(x) = delta_ik * (1 + sin^2(x0) / 4); its (0,0) stencil error is
// -sin^2(h)/4, a clean O(h^2) term (flat backends are exact under the
// stencil and cannot exhibit the convergence order)
SigmaSpace make_wavy(int dim) {
  return make_function_space(
      dim,
      [](std::span<const double> x, std::span<const double> y) {
        double q = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const double d = x[i] - y[i];
          q += d * d;
        }
        return 0.5 * q * (1.0 + 0.25 * std::sin(x[0]) * std::sin(y[0]));
      },
      "wavy");
}

double fd_defect(const SigmaSpace& s, const Point& x,
                 const Eigen::MatrixXd& exact, double h) {
  return (metric_from_sigma_fd(s, x, h) - exact).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE_BEGIN("spaces");

TEST_CASE("make_euclidean: values and validation") {
  const SigmaSpace e1 = make_euclidean(1);
  CHECK(sigma(e1, {0.0}, {2.0}) == doctest::Approx(2.0));
  CHECK(sigma(e1, {1.25}, {1.25}) == 0.0);
  const SigmaSpace e3 = make_euclidean(3);
  CHECK(sigma(e3, {1, 1, 1}, {2, 2, 2}) == doctest::Approx(1.5));
  CHECK_THROWS_AS(make_euclidean(0), ContractError);
}

TEST_CASE("make_minkowski: signature cases") {
  const SigmaSpace m2 = make_minkowski(2);
  CHECK(sigma(m2, {0, 0}, {1, 0}) == doctest::Approx(0.5));
  CHECK(sigma(m2, {0, 0}, {0, 1}) == doctest::Approx(-0.5));
  CHECK(sigma(m2, {0, 0}, {1, 1}) == 0.0);
  CHECK_THROWS_AS(make_minkowski(1), ContractError);
}

TEST_CASE("make_tabulated: agrees with the analytic source") {
  const SigmaSpace e2 = make_euclidean(2);
  const std::vector<Point> pts{{0, 0}, {1, 0}, {0, 1}};
  Eigen::MatrixXd table(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      table(i, j) = sigma(e2, pts[static_cast<std::size_t>(i)],
                          pts[static_cast<std::size_t>(j)]);
  const SigmaSpace tab = make_tabulated(table);

  const Multivector analytic{pts[0], pts[1], pts[2]};
  const Multivector ids{Point::from_id(0), Point::from_id(1), Point::from_id(2)};
  CHECK(gram_det(tab, ids) ==
        doctest::Approx(gram_det(e2, analytic)).epsilon(1e-12));
  CHECK(sigma(tab, Point::from_id(1), Point::from_id(2)) ==
        sigma(e2, pts[1], pts[2]));
}

TEST_CASE("make_tabulated: one-point table and validation errors") {
  const SigmaSpace one = make_tabulated(Eigen::MatrixXd::Zero(1, 1));
  CHECK(sigma(one, Point::from_id(0), Point::from_id(0)) == 0.0);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 1) = 0.5;
  bad(1, 0) = 0.25;
  CHECK_THROWS_WITH_AS(static_cast<void>(make_tabulated(bad)),
                       doctest::Contains("asymmetric (0,1)"), ValidationError);

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(1, 1) = 1e-9;
  CHECK_THROWS_WITH_AS(static_cast<void>(make_tabulated(diag)),
                       doctest::Contains("diagonal (1,1)"), ValidationError);
}

TEST_CASE("tabulated from sampled Euclidean is observationally equivalent") {
  const SigmaSpace e3 = make_euclidean(3);
  oracle::Rng rng(101);
  std::vector<Point> pts;
  for (int i = 0; i < 12; ++i) pts.emplace_back(rng.point(3));
  Eigen::MatrixXd table(12, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j)
      table(i, j) = sigma(e3, pts[static_cast<std::size_t>(i)],
                          pts[static_cast<std::size_t>(j)]);
  const SigmaSpace tab = make_tabulated(table);

  for (int order = 1; order <= 4; ++order) {
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<Point> mv_pts, id_pts;
      for (int k = 0; k <= order; ++k) {
        const int idx = (rep * 5 + k * 3 + order) % 12;
        mv_pts.push_back(pts[static_cast<std::size_t>(idx)]);
        id_pts.push_back(Point::from_id(static_cast<std::size_t>(idx)));
      }
      const double fa = gram_det(e3, Multivector(mv_pts));
      const double ft = gram_det(tab, Multivector(id_pts));
      CHECK(std::fabs(fa - ft) <= 1e-12 * std::max(1.0, std::fabs(fa)));
    }
  }
}

TEST_CASE("deformed: named distortions") {
  const SigmaSpace e2 = make_euclidean(2);
  const SigmaSpace scaled = make_deformed(e2, ScaleDistortion{3.0});
  CHECK(sigma(scaled, {0, 0}, {1, 0}) == doctest::Approx(1.5));

  const SigmaSpace capped = make_deformed(e2, AffineCapDistortion{0.5, 1.0});
  CHECK(sigma(capped, {0, 0}, {1, 0}) == doctest::Approx(0.75));   // below cap
  CHECK(sigma(capped, {0, 0}, {10, 0}) == doctest::Approx(50.5));  // capped

  CHECK_THROWS_AS(make_deformed(e2, ScaleDistortion{0.0}), ValidationError);
  CHECK_THROWS_AS(make_deformed(e2, AffineCapDistortion{-1.5, 1.0}),
                  ValidationError);
  CHECK_THROWS_AS(make_deformed(e2, AffineCapDistortion{0.5, 0.0}),
                  ValidationError);
}

TEST_CASE("metric_from_sigma_fd: flat backends at h = 1e-4") {
  const SigmaSpace e2 = make_euclidean(2);
  const Eigen::MatrixXd ge = metric_from_sigma_fd(e2, {0.3, -1.2}, 1e-4);
  CHECK((ge - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-7);

  const SigmaSpace m2 = make_minkowski(2);
  Eigen::MatrixXd eta(2, 2);
  eta << 1, 0, 0, -1;
  CHECK((metric_from_sigma_fd(m2, {0.0, 0.5}, 1e-4) - eta)
            .cwiseAbs()
            .maxCoeff() < 1e-7);

  const SigmaSpace scaled = make_deformed(e2, ScaleDistortion{2.0});
  CHECK((metric_from_sigma_fd(scaled, {1.0, 1.0}, 1e-4) -
         2.0 * Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-7);
}

TEST_CASE("metric_from_sigma_fd: errors") {
  const SigmaSpace tab = make_tabulated(Eigen::MatrixXd::Zero(2, 2));
  CHECK_THROWS_AS(metric_from_sigma_fd(tab, Point::from_id(0), 1e-4),
                  UnsupportedError);
  const SigmaSpace e2 = make_euclidean(2);
  CHECK_THROWS_AS(metric_from_sigma_fd(e2, {0, 0}, 0.0), ContractError);
}

TEST_CASE("metric_from_sigma_fd: O(h^2) convergence on a curved sigma") {
  const SigmaSpace wavy = make_wavy(2);
  const Point x{0.4, -0.7};
  Eigen::MatrixXd exact = Eigen::MatrixXd::Identity(2, 2);
  exact *= 1.0 + 0.25 * std::sin(0.4) * std::sin(0.4);

  const double d1 = fd_defect(wavy, x, exact, 1e-3);
  const double d2 = fd_defect(wavy, x, exact, 5e-4);
  const double d3 = fd_defect(wavy, x, exact, 2.5e-4);
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.15));
  CHECK(d2 / d3 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("space spec JSON: every kind parses") {
  using nlohmann::json;
  CHECK(parse_space_spec(json::parse(R"({"kind":"euclidean","dim":3})")).dim() == 3);
  CHECK(parse_space_spec(json::parse(R"({"kind":"minkowski","dim":2})")).kind() ==
        "minkowski(2)");
  const SigmaSpace tab = parse_space_spec(
      json::parse(R"({"kind":"table","sigma":[[0,0.5],[0.5,0]]})"));
  CHECK(tab.point_count() == 2);

  const SigmaSpace res = parse_space_spec(json::parse(
      R"({"kind":"restrict","base":{"kind":"euclidean","dim":2},
          "region":{"kind":"halfspace","normal":[1,0],"offset":0}})"));
  CHECK(res.contains(Point{1, 0}));
  CHECK_FALSE(res.contains(Point{-1, 0}));

  const SigmaSpace holed = parse_space_spec(json::parse(
      R"({"kind":"restrict","base":{"kind":"euclidean","dim":2},
          "region":{"kind":"ball_complement","center":[0,0],"radius":1}})"));
  CHECK_FALSE(holed.contains(Point{0.5, 0}));
  CHECK(holed.contains(Point{2, 0}));

  const SigmaSpace def = parse_space_spec(json::parse(
      R"({"kind":"deformed","base":{"kind":"euclidean","dim":2},
          "distortion":{"kind":"scale","lambda":2.0}})"));
  CHECK(sigma(def, {0, 0}, {1, 0}) == doctest::Approx(1.0));
}

TEST_CASE("space spec JSON: errors name the field") {
  using nlohmann::json;
  CHECK_THROWS_WITH_AS(
      static_cast<void>(parse_space_spec(json::parse(R"({"kind":"euclidean"})"))),
      doctest::Contains("dim"), ValidationError);
  CHECK_THROWS_WITH_AS(
      static_cast<void>(parse_space_spec(json::parse(R"({"kind":"wormhole"})"))),
      doctest::Contains("unknown kind"), ValidationError);
  CHECK_THROWS_WITH_AS(
      static_cast<void>(parse_space_spec(
          json::parse(R"({"kind":"table","sigma":[[0,1]]})"))),
      doctest::Contains("square"), ValidationError);
}

TEST_SUITE_END();
