#include "tgeom/objects.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tgeom {

const char* to_string(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::Sphere: return "sphere";
    case EnvelopeKind::Ellipsoid: return "ellipsoid";
    case EnvelopeKind::Segment: return "segment";
    case EnvelopeKind::Ray: return "ray";
    case EnvelopeKind::Tube: return "tube";
    case EnvelopeKind::TubeSection: return "tube_section";
  }
  return "?";
}

const char* to_string(TubeClass c) {
  switch (c) {
    case TubeClass::Timelike: return "timelike";
    case TubeClass::Spacelike: return "spacelike";
    case TubeClass::Null: return "null";
  }
  return "?";
}

EnvelopeObject make_sphere(Point center, Point through) {
  return EnvelopeObject{EnvelopeKind::Sphere,
                        {std::move(center), std::move(through)},
                        std::nullopt};
}
EnvelopeObject make_ellipsoid(Point focus0, Point focus1, Point through) {
  return EnvelopeObject{
      EnvelopeKind::Ellipsoid,
      {std::move(focus0), std::move(focus1), std::move(through)},
      std::nullopt};
}
EnvelopeObject make_segment(Point a, Point b) {
  return EnvelopeObject{EnvelopeKind::Segment, {std::move(a), std::move(b)},
                        std::nullopt};
}
EnvelopeObject make_ray(Point from, Point through) {
  return EnvelopeObject{EnvelopeKind::Ray, {std::move(from), std::move(through)},
                        std::nullopt};
}
EnvelopeObject make_tube(std::vector<Point> skeleton) {
  return EnvelopeObject{EnvelopeKind::Tube, std::move(skeleton), std::nullopt};
}
EnvelopeObject make_tube_section(std::vector<Point> skeleton, Point anchor) {
  return EnvelopeObject{EnvelopeKind::TubeSection, std::move(skeleton),
                        std::move(anchor)};
}

namespace {

std::size_t required_arity(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::Sphere: return 2;
    case EnvelopeKind::Ellipsoid: return 3;
    case EnvelopeKind::Segment: return 2;
    case EnvelopeKind::Ray: return 2;
    default: return 0;  // tube kinds: any order >= 1
  }
}

void check_arity(const EnvelopeObject& obj) {
  const std::size_t want = required_arity(obj.kind);
  const std::size_t got = obj.skeleton.size();
  if (want != 0 && got != want)
    throw ContractError(std::string(to_string(obj.kind)) + ": skeleton needs " +
                        std::to_string(want) + " points, got " +
                        std::to_string(got));
  if (want == 0) {
    if (got < 2)
      throw ContractError("tube: skeleton needs at least 2 points");
    if (got > 11)
      throw ContractError("tube: skeleton order above 10 is not supported");
  }
  if (obj.kind == EnvelopeKind::TubeSection && !obj.anchor)
    throw ContractError("tube_section: anchor point required");
}

// accumulator for sums of +-sqrt(2 sigma) terms; real and imaginary
// magnitudes never mix into one number
struct SqrtSum {
  double real = 0.0;
  double imag = 0.0;
  bool has_real = false;
  bool has_imag = false;
  double scale = 0.0;

  void add(double sign, double sigma_value) {
    const double two_sigma = 2.0 * sigma_value;
    scale = std::max(scale, std::fabs(two_sigma));
    const double mag = std::sqrt(std::fabs(two_sigma));
    if (mag == 0.0) return;
    if (two_sigma < 0.0) {
      imag += sign * mag;
      has_imag = true;
    } else {
      real += sign * mag;
      has_real = true;
    }
  }

  EnvelopeValue finish() const {
    if (has_real && has_imag)
      return {std::numeric_limits<double>::quiet_NaN(),
              EnvelopeSignature::Mixed, std::sqrt(scale)};
    if (has_imag)
      return {imag, EnvelopeSignature::Imaginary, std::sqrt(scale)};
    return {real, EnvelopeSignature::Real, std::sqrt(scale)};
  }
};

EnvelopeValue sphere_value(const SigmaSpace& s, const Point& p0,
                           const Point& p1, const Point& r) {
  SqrtSum sum;
  sum.add(+1.0, s.sigma(p0, p1));
  sum.add(-1.0, s.sigma(p0, r));
  return sum.finish();
}

EnvelopeValue segment_value(const SigmaSpace& s, const Point& p0,
                            const Point& p1, const Point& r) {
  SqrtSum sum;
  sum.add(+1.0, s.sigma(p0, p1));
  sum.add(-1.0, s.sigma(p0, r));
  sum.add(-1.0, s.sigma(p1, r));
  return sum.finish();
}

// F_n and the zero-test scale s^n of a multivector, one Gram evaluation
std::pair<double, double> det_and_scale(const SigmaSpace& s,
                                        const Multivector& mv) {
  for (const auto& p : mv.points()) s.require_inside(p);
  if (mv.has_repeated_point()) return {0.0, 0.0};
  const auto& pts = mv.points();
  const Eigen::MatrixXd g =
      gram_matrix(s, pts.front(), {pts.data() + 1, pts.size() - 1});
  return {lu_det(g), std::pow(max_abs_entry(g), mv.order())};
}

EnvelopeValue tube_value(const SigmaSpace& s, std::span<const Point> skeleton,
                         const Point& r) {
  std::vector<Point> pts(skeleton.begin(), skeleton.end());
  pts.push_back(r);
  const auto [det, scale] = det_and_scale(s, Multivector(std::move(pts)));
  return {det, EnvelopeSignature::Real, scale};
}

EnvelopeValue section_value(const SigmaSpace& s,
                            std::span<const Point> skeleton,
                            const Point& anchor, const Point& r) {
  double worst = 0.0;
  double scale = 0.0;
  for (const Point& pl : skeleton) {
    const double to_anchor = s.sigma(pl, anchor);
    const double to_r = s.sigma(pl, r);
    worst = std::max(worst, std::fabs(to_r - to_anchor));
    scale = std::max({scale, std::fabs(to_anchor), std::fabs(to_r)});
  }
  return {worst, EnvelopeSignature::Real, scale};
}

bool value_is_member(const EnvelopeValue& v, double tol) {
  if (v.signature == EnvelopeSignature::Mixed) return false;
  return std::fabs(v.value) <= tol * v.scale;
}

void check_tube_preconditions(const SigmaSpace& space,
                              const EnvelopeObject& obj, double tol) {
  const auto [fn, scale] = det_and_scale(space, Multivector(obj.skeleton));
  // det_is_zero scales by s^order, and scale already carries the exponent
  if (std::fabs(fn) <= tol * scale)
    throw ContractError("tube: degenerate skeleton (F_n = 0)");
  if (obj.kind == EnvelopeKind::TubeSection) {
    const EnvelopeValue at_anchor = tube_value(space, obj.skeleton, *obj.anchor);
    if (!value_is_member(at_anchor, tol))
      throw ContractError("tube_section: anchor is not a tube member");
  }
}

EnvelopeValue raw_value(const SigmaSpace& space, const EnvelopeObject& obj,
                        const Point& r) {
  const auto& sk = obj.skeleton;
  switch (obj.kind) {
    case EnvelopeKind::Sphere:
      return sphere_value(space, sk[0], sk[1], r);
    case EnvelopeKind::Ellipsoid: {
      // coincident focuses: evaluate the degenerate form so that the
      // sphere degeneration is exact pointwise, not only as a zero set
      if (sk[0] == sk[1]) return sphere_value(space, sk[0], sk[2], r);
      SqrtSum sum;
      sum.add(+1.0, space.sigma(sk[0], sk[2]));
      sum.add(+1.0, space.sigma(sk[1], sk[2]));
      sum.add(-1.0, space.sigma(sk[0], r));
      sum.add(-1.0, space.sigma(sk[1], r));
      return sum.finish();
    }
    case EnvelopeKind::Segment:
      return segment_value(space, sk[0], sk[1], r);
    case EnvelopeKind::Ray: {
      // zero iff P1 lies between P0 and R
      SqrtSum sum;
      sum.add(+1.0, space.sigma(sk[0], r));
      sum.add(-1.0, space.sigma(sk[0], sk[1]));
      sum.add(-1.0, space.sigma(sk[1], r));
      return sum.finish();
    }
    case EnvelopeKind::Tube:
      return tube_value(space, sk, r);
    case EnvelopeKind::TubeSection:
      return section_value(space, sk, *obj.anchor, r);
  }
  throw ContractError("unknown envelope kind");
}

}  // namespace

EnvelopeValue envelope_value(const SigmaSpace& space, const EnvelopeObject& obj,
                             const Point& r) {
  check_arity(obj);
  if (obj.kind == EnvelopeKind::Tube || obj.kind == EnvelopeKind::TubeSection)
    check_tube_preconditions(space, obj, kDefaultTol);
  return raw_value(space, obj, r);
}

bool is_member(const SigmaSpace& space, const EnvelopeObject& obj,
               const Point& r, double tol) {
  check_arity(obj);
  if (obj.kind == EnvelopeKind::Tube || obj.kind == EnvelopeKind::TubeSection)
    check_tube_preconditions(space, obj, tol);
  return value_is_member(raw_value(space, obj, r), tol);
}

bool tube_member(const SigmaSpace& space, std::span<const Point> skeleton,
                 const Point& r, double tol) {
  EnvelopeObject obj{EnvelopeKind::Tube,
                     std::vector<Point>(skeleton.begin(), skeleton.end()),
                     std::nullopt};
  check_arity(obj);
  check_tube_preconditions(space, obj, tol);
  return value_is_member(raw_value(space, obj, r), tol);
}

bool tube_section_member(const SigmaSpace& space,
                         std::span<const Point> skeleton, const Point& anchor,
                         const Point& r, double tol) {
  EnvelopeObject obj{EnvelopeKind::TubeSection,
                     std::vector<Point>(skeleton.begin(), skeleton.end()),
                     anchor};
  check_arity(obj);
  check_tube_preconditions(space, obj, tol);
  return value_is_member(raw_value(space, obj, r), tol);
}

TubeClass classify_tube(const SigmaSpace& space, const Point& x,
                        const Point& xprime) {
  const double s = space.sigma(x, xprime);
  if (s > 0.0) return TubeClass::Timelike;
  if (s < 0.0) return TubeClass::Spacelike;
  return TubeClass::Null;
}

std::vector<GridMember> grid_sample(const SigmaSpace& space,
                                    const EnvelopeObject& obj,
                                    const GridRegion& region, double tol) {
  if (!space.analytic())
    throw UnsupportedError("grid_sample: sampling requires coordinates, got " +
                           space.kind());
  const std::size_t n = static_cast<std::size_t>(space.dim());
  if (region.low.size() != n || region.high.size() != n ||
      region.res.size() != n)
    throw ContractError("grid_sample: region arity does not match space dim");
  for (std::size_t i = 0; i < n; ++i) {
    if (region.res[i] < 2)
      throw ContractError("grid_sample: resolution must be >= 2 per axis");
    if (!(region.low[i] < region.high[i]))
      throw ContractError("grid_sample: degenerate region (low >= high)");
  }

  check_arity(obj);
  if (obj.kind == EnvelopeKind::Tube || obj.kind == EnvelopeKind::TubeSection)
    check_tube_preconditions(space, obj, tol);

  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i)
    step[i] = (region.high[i] - region.low[i]) / (region.res[i] - 1);

  std::vector<GridMember> members;
  std::vector<int> idx(n, 0);
  std::vector<double> coords(n);
  // odometer with axis 0 slowest: rows come out in lexicographic order
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      coords[i] = region.low[i] + step[i] * idx[i];
    Point p(coords);
    if (space.contains(p)) {
      const EnvelopeValue v = raw_value(space, obj, p);
      if (value_is_member(v, tol))
        members.push_back(GridMember{std::move(p), v.value});
    }
    std::size_t axis = n;
    while (axis > 0) {
      --axis;
      if (++idx[axis] < region.res[axis]) break;
      idx[axis] = 0;
      if (axis == 0) return members;
    }
  }
}

}  // namespace tgeom
