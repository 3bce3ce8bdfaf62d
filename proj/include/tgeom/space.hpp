#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tgeom/errors.hpp"
#include "tgeom/point.hpp"

namespace tgeom {

/// World-function backend. Implementations must be immutable: a backend is
/// shared by value-semantic SigmaSpace handles and may be used from several
/// threads at once.
///
/// The world function must satisfy sigma(P,P) = 0 and sigma(P,Q) =
/// sigma(Q,P) and be deterministic. It may be negative (imaginary metric);
/// no bound on |sigma| is imposed.
class SpaceBackend {
 public:
  virtual ~SpaceBackend() = default;

  /// Evaluate sigma for two in-domain points. Domain checking is the
  /// caller's (SigmaSpace's) job.
  virtual double sigma(const Point& p, const Point& q) const = 0;

  virtual bool contains(const Point& p) const = 0;

  /// True when points carry coordinates (Euclidean, Minkowski, deformations
  /// and restrictions of those, custom coordinate functions).
  virtual bool has_coordinates() const = 0;

  /// Ambient coordinate dimension; 0 for finite (tabulated) backends.
  virtual int dim() const = 0;

  /// Number of points of a finite backend; 0 for coordinate backends.
  virtual std::size_t point_count() const = 0;

  virtual std::string kind() const = 0;
};

/// A point domain paired with a world function. Cheap to copy; immutable.
class SigmaSpace {
 public:
  explicit SigmaSpace(std::shared_ptr<const SpaceBackend> backend)
      : backend_(std::move(backend)) {}

  /// Domain-checked world-function evaluation.
  double sigma(const Point& p, const Point& q) const {
    require_inside(p);
    require_inside(q);
    return backend_->sigma(p, q);
  }

  bool contains(const Point& p) const { return backend_->contains(p); }

  void require_inside(const Point& p) const {
    if (!backend_->contains(p))
      throw DomainError("point " + p.describe() + " outside domain of " +
                        backend_->kind() + " space");
  }

  bool analytic() const { return backend_->has_coordinates(); }
  int dim() const { return backend_->dim(); }
  std::size_t point_count() const { return backend_->point_count(); }
  std::string kind() const { return backend_->kind(); }

  const std::shared_ptr<const SpaceBackend>& backend() const {
    return backend_;
  }

 private:
  std::shared_ptr<const SpaceBackend> backend_;
};

/// Named restriction regions. These are the reproducible, serializable
/// subset descriptors the CLI accepts; arbitrary predicates are available
/// to library users through PredicateRegion.
struct Halfspace {
  std::vector<double> normal;
  double offset = 0.0;  // keep x with dot(normal, x) >= offset
};

struct BallComplement {
  std::vector<double> center;
  double radius = 0.0;  // keep x with |x - center| >= radius
};

struct IdSubset {
  std::vector<std::size_t> ids;  // keep listed table ids
};

struct PredicateRegion {
  std::function<bool(const Point&)> keep;
};

using Region = std::variant<Halfspace, BallComplement, IdSubset, PredicateRegion>;

/// Contraction of sigma onto a subset: the returned space evaluates sigma
/// identically on retained points and rejects everything else.
SigmaSpace restrict_space(const SigmaSpace& base, Region region);

}  // namespace tgeom
