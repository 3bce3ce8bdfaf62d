#include "tgeom/collinearity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tgeom {

namespace {

constexpr double kDefectFloor = 1e-30;

double collinearity_defect(double aa, double bb, double ab) {
  const double raw = ab * ab - aa * bb;
  return std::fabs(raw) / std::max(kDefectFloor, aa * aa + bb * bb);
}

Orientation orient(double aa, double bb, double ab, double tol) {
  // orientation needs both squared lengths nonzero; with c1.10 lengths the
  // parallel case means ab = +sqrt(aa*bb) for real vectors and
  // ab = -sqrt(aa*bb) for imaginary ones
  const double prod = aa * bb;
  if (!(prod > tol * (aa * aa + bb * bb))) return Orientation::Indeterminate;
  const bool positive = ab > 0.0;
  if (aa > 0.0) return positive ? Orientation::Parallel : Orientation::Antiparallel;
  return positive ? Orientation::Antiparallel : Orientation::Parallel;
}

}  // namespace

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::Parallel: return "parallel";
    case Orientation::Antiparallel: return "antiparallel";
    case Orientation::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

CollinearityVerdict is_collinear(const SigmaSpace& space, const Multivector& a,
                                 const Multivector& b, double tol) {
  const double ab = mv_scalar_product(space, a, b);
  const double aa = mv_scalar_product(space, a, a);
  const double bb = mv_scalar_product(space, b, b);
  CollinearityVerdict v;
  v.defect = collinearity_defect(aa, bb, ab);
  v.collinear = v.defect <= tol;
  v.orientation = v.collinear ? orient(aa, bb, ab, tol)
                              : Orientation::Indeterminate;
  return v;
}

bool tube_through_point_member(const SigmaSpace& space, const Point& p0,
                               const Point& p1, const Point& q0,
                               const Point& r, double tol) {
  const double aa = two_point_scalar(space, p0, p1, p0, p1);
  if (aa == 0.0)
    throw ContractError(
        "tube_through_point_member: degenerate skeleton, sigma(P0,P1) = 0");
  const double bb = two_point_scalar(space, q0, r, q0, r);
  const double ab = two_point_scalar(space, p0, p1, q0, r);
  return collinearity_defect(aa, bb, ab) <= tol;
}

std::vector<std::vector<double>> sphere_directions(int dim, int count) {
  if (dim < 2)
    throw ContractError("sphere_directions: dim must be >= 2");
  if (count < 2)
    throw ContractError("sphere_directions: need at least 2 directions");
  std::vector<std::vector<double>> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    for (int k = 0; k < count; ++k) {
      const double th = 2.0 * M_PI * k / count;
      dirs.push_back({std::cos(th), std::sin(th)});
    }
    return dirs;
  }
  if (dim == 3) {
    // endpoint Fibonacci lattice: both axis-0 poles are exact members
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double t = 1.0 - 2.0 * k / (count - 1);
      const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
      const double phi = golden_angle * k;
      dirs.push_back({t, r * std::cos(phi), r * std::sin(phi)});
    }
    return dirs;
  }
  // above dim 3 a Fibonacci lattice has no standard analog; fall back to a
  // fixed-seed Gaussian set (deterministic per platform)
  std::mt19937_64 eng(0x74676d636f6e65ULL);
  const auto u53 = [&eng]() {
    return (static_cast<double>(eng() >> 11) + 1.0) * 0x1p-53;
  };
  while (dirs.size() < static_cast<std::size_t>(count)) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; i += 2) {
      const double u1 = u53();
      const double u2 = u53();
      const double m = std::sqrt(-2.0 * std::log(u1));
      v[static_cast<std::size_t>(i)] = m * std::cos(2.0 * M_PI * u2);
      if (i + 1 < dim)
        v[static_cast<std::size_t>(i) + 1] = m * std::sin(2.0 * M_PI * u2);
    }
    double norm = 0.0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    for (double& c : v) c /= norm;
    dirs.push_back(std::move(v));
  }
  return dirs;
}

ConeSampleResult cone_sample(const SigmaSpace& space, const Point& p0,
                             const Point& p1, const Point& q0,
                             int sphere_samples, double tol, double radius) {
  if (!space.analytic())
    throw UnsupportedError("cone_sample: needs a coordinate backend, got " +
                           space.kind());
  if (!(radius > 0.0))
    throw ContractError("cone_sample: radius must be > 0");
  space.require_inside(q0);
  const double aa = two_point_scalar(space, p0, p1, p0, p1);
  if (aa == 0.0)
    throw ContractError("cone_sample: degenerate skeleton, sigma(P0,P1) = 0");

  const int dim = space.dim();
  const auto dirs = sphere_directions(dim, sphere_samples);
  const auto& origin = q0.coords();

  ConeSampleResult result;
  result.total_directions = sphere_samples;
  for (const auto& u : dirs) {
    std::vector<double> coords(origin);
    for (int i = 0; i < dim; ++i)
      coords[static_cast<std::size_t>(i)] += radius * u[static_cast<std::size_t>(i)];
    Point r(std::move(coords));
    if (!space.contains(r)) continue;
    const double bb = two_point_scalar(space, q0, r, q0, r);
    const double ab = two_point_scalar(space, p0, p1, q0, r);
    const double defect = collinearity_defect(aa, bb, ab);
    if (defect <= tol)
      result.accepted.push_back(
          ConeDirection{u, std::move(r), defect, orient(aa, bb, ab, tol)});
  }

  // aperture per orientation class: the degenerate (proper Euclidean,
  // timelike) cone keeps one direction per class, aperture 0
  double aperture = 0.0;
  for (Orientation cls : {Orientation::Parallel, Orientation::Antiparallel,
                          Orientation::Indeterminate}) {
    for (std::size_t i = 0; i < result.accepted.size(); ++i) {
      if (result.accepted[i].orientation != cls) continue;
      for (std::size_t j = i + 1; j < result.accepted.size(); ++j) {
        if (result.accepted[j].orientation != cls) continue;
        double dot = 0.0;
        for (int c = 0; c < dim; ++c)
          dot += result.accepted[i].direction[static_cast<std::size_t>(c)] *
                 result.accepted[j].direction[static_cast<std::size_t>(c)];
        aperture = std::max(aperture,
                            std::acos(std::clamp(dot, -1.0, 1.0)));
      }
    }
  }
  result.aperture = aperture;
  return result;
}

}  // namespace tgeom
