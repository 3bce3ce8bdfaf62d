#pragma once

#include <vector>

#include "tgeom/multivector.hpp"
#include "tgeom/sigma_core.hpp"
#include "tgeom/space.hpp"

namespace tgeom {

enum class Orientation { Parallel, Antiparallel, Indeterminate };

const char* to_string(Orientation o);

/// Result of the sigma-immanent collinearity test (A.B)^2 = |A|^2 |B|^2.
/// orientation is Indeterminate unless the verdict is collinear AND both
/// squared lengths are nonzero (null lengths leave orientation undefined).
struct CollinearityVerdict {
  bool collinear = false;
  Orientation orientation = Orientation::Indeterminate;
  double defect = 0.0;  // |(A.B)^2 - (A.A)(B.B)| / max(eps, (A.A)^2 + (B.B)^2)
};

/// Collinearity of two equal-order multivectors. The defect is the
/// dimensionless residual of (A.B)^2 = (A.A)(B.B); collinear iff
/// defect <= tol.
CollinearityVerdict is_collinear(const SigmaSpace& space, const Multivector& a,
                                 const Multivector& b,
                                 double tol = kDefaultTol);

/// Membership of R in the first-order tube through Q0 collinear to P0P1.
/// Uses the raw determinant form (A.A)(B.B) - (A.B)^2, which stays defined
/// for null Q0R (so Q0 itself is always a member). The skeleton must be
/// nondegenerate: sigma(P0,P1) != 0.
bool tube_through_point_member(const SigmaSpace& space, const Point& p0,
                               const Point& p1, const Point& q0,
                               const Point& r, double tol = kDefaultTol);

struct ConeDirection {
  std::vector<double> direction;  // unit vector (Euclidean norm)
  Point point;                    // q0 + radius * direction
  double defect = 0.0;
  Orientation orientation = Orientation::Indeterminate;
};

struct ConeSampleResult {
  std::vector<ConeDirection> accepted;
  double aperture = 0.0;  // max pairwise angle within an orientation class
  int total_directions = 0;
};

/// Deterministic unit directions: equally spaced angles for dim 2, the
/// endpoint Fibonacci sphere (poles on axis 0 included) for dim 3, and a
/// fixed-seed Gaussian set for higher dims.
std::vector<std::vector<double>> sphere_directions(int dim, int count);

/// Sample the collinearity cone at Q0 of the vector P0P1: probe points
/// R = Q0 + radius * u over a deterministic direction set and keep the
/// directions whose collinearity defect is <= tol.
ConeSampleResult cone_sample(const SigmaSpace& space, const Point& p0,
                             const Point& p1, const Point& q0,
                             int sphere_samples, double tol,
                             double radius = 1.0);

}  // namespace tgeom
