#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tgeom/multivector.hpp"
#include "tgeom/sigma_core.hpp"
#include "tgeom/space.hpp"

namespace tgeom {

/// Elementary geometric objects as zero sets of an envelope function over
/// a finite skeleton.
enum class EnvelopeKind { Sphere, Ellipsoid, Segment, Ray, Tube, TubeSection };

const char* to_string(EnvelopeKind k);

struct EnvelopeObject {
  EnvelopeKind kind;
  std::vector<Point> skeleton;
  std::optional<Point> anchor;  // TubeSection only
};

EnvelopeObject make_sphere(Point center, Point through);
EnvelopeObject make_ellipsoid(Point focus0, Point focus1, Point through);
EnvelopeObject make_segment(Point a, Point b);
EnvelopeObject make_ray(Point from, Point through);
EnvelopeObject make_tube(std::vector<Point> skeleton);
EnvelopeObject make_tube_section(std::vector<Point> skeleton, Point anchor);

/// sqrt(2 sigma) terms are real for sigma >= 0 and imaginary for sigma < 0.
/// A sum mixing nonzero real and imaginary magnitudes has no defined order
/// relation; such points are reported Mixed and are never members.
enum class EnvelopeSignature { Real, Imaginary, Mixed };

struct EnvelopeValue {
  double value = 0.0;  // magnitude combination; NaN when Mixed
  EnvelopeSignature signature = EnvelopeSignature::Real;
  double scale = 0.0;  // kind-dependent scale used by the membership test
};

/// Envelope function value at R. Degenerate ellipsoids evaluate through
/// their degenerate form (coincident focuses -> sphere), making the
/// degeneration exact pointwise.
EnvelopeValue envelope_value(const SigmaSpace& space, const EnvelopeObject& obj,
                             const Point& r);

/// Membership test with kind-scaled threshold: tube kinds use
/// |F_{n+1}| <= tol * s^{n+1} (s = max |Gamma| over the bordered Gram
/// matrix); sqrt-sigma kinds use |f| <= tol * sqrt(s) (s = max |2 sigma|
/// argument); sections require every sigma equality within tol * s.
bool is_member(const SigmaSpace& space, const EnvelopeObject& obj,
               const Point& r, double tol = kDefaultTol);

/// Order-n tube membership: F_{n+1}(skeleton, R) = 0. The skeleton itself
/// must have nonzero length (|F_n| above the zero-test threshold).
bool tube_member(const SigmaSpace& space, std::span<const Point> skeleton,
                 const Point& r, double tol = kDefaultTol);

/// Tube-section membership: sigma(P_l, R) = sigma(P_l, anchor) for every
/// skeleton point P_l. The anchor must itself lie on the tube.
bool tube_section_member(const SigmaSpace& space,
                         std::span<const Point> skeleton, const Point& anchor,
                         const Point& r, double tol = kDefaultTol);

enum class TubeClass { Timelike, Spacelike, Null };

const char* to_string(TubeClass c);

/// Sign classification of sigma(x,x'): positive timelike, negative
/// spacelike, zero null. Null pairs classify fine but cannot seed a tube.
TubeClass classify_tube(const SigmaSpace& space, const Point& x,
                        const Point& xprime);

struct GridRegion {
  std::vector<double> low, high;
  std::vector<int> res;  // grid points per axis, >= 2
};

struct GridMember {
  Point point;
  double value = 0.0;
};

/// Deterministic scan of an axis-aligned grid; returns the member points in
/// lexicographic coordinate order with their envelope values attached.
/// Grid nodes outside a restricted domain are skipped.
std::vector<GridMember> grid_sample(const SigmaSpace& space,
                                    const EnvelopeObject& obj,
                                    const GridRegion& region,
                                    double tol = kDefaultTol);

}  // namespace tgeom
