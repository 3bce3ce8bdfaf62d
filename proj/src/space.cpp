#include "tgeom/space.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

#include "tgeom/point.hpp"

namespace tgeom {

std::string Point::describe() const {
  std::ostringstream os;
  if (has_coords()) {
    os << "(";
    const auto& c = coords();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ",";
      os << c[i];
    }
    os << ")";
  } else {
    os << "#" << id();
  }
  return os.str();
}

namespace {

class RestrictedBackend : public SpaceBackend {
 public:
  RestrictedBackend(std::shared_ptr<const SpaceBackend> base, Region region)
      : base_(std::move(base)), region_(std::move(region)) {
    if (const auto* ids = std::get_if<IdSubset>(&region_)) {
      if (ids->ids.empty())
        throw ContractError("restrict: subset must be non-empty");
      if (base_->point_count() == 0)
        throw ContractError("restrict: id subset needs a finite base space");
      keep_ids_.insert(ids->ids.begin(), ids->ids.end());
    }
    if (const auto* hs = std::get_if<Halfspace>(&region_)) {
      if (hs->normal.empty())
        throw ContractError("restrict: halfspace normal must be non-empty");
      if (!base_->has_coordinates())
        throw ContractError("restrict: halfspace needs a coordinate base");
    }
    if (const auto* bc = std::get_if<BallComplement>(&region_)) {
      if (bc->center.empty())
        throw ContractError("restrict: ball center must be non-empty");
      if (!base_->has_coordinates())
        throw ContractError("restrict: ball region needs a coordinate base");
    }
    if (const auto* pr = std::get_if<PredicateRegion>(&region_)) {
      if (!pr->keep)
        throw ContractError("restrict: predicate must be callable");
    }
  }

  double sigma(const Point& p, const Point& q) const override {
    return base_->sigma(p, q);
  }

  bool contains(const Point& p) const override {
    if (!base_->contains(p)) return false;
    return std::visit(
        [&](const auto& region) { return keeps(region, p); }, region_);
  }

  bool has_coordinates() const override { return base_->has_coordinates(); }
  int dim() const override { return base_->dim(); }
  std::size_t point_count() const override { return base_->point_count(); }
  std::string kind() const override {
    return "restricted " + base_->kind();
  }

 private:
  bool keeps(const Halfspace& hs, const Point& p) const {
    const auto& x = p.coords();
    if (x.size() != hs.normal.size()) return false;
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += hs.normal[i] * x[i];
    return dot >= hs.offset;
  }
  bool keeps(const BallComplement& bc, const Point& p) const {
    const auto& x = p.coords();
    if (x.size() != bc.center.size()) return false;
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - bc.center[i];
      d2 += d * d;
    }
    return d2 >= bc.radius * bc.radius;
  }
  bool keeps(const IdSubset&, const Point& p) const {
    return keep_ids_.count(p.id()) > 0;
  }
  bool keeps(const PredicateRegion& pr, const Point& p) const {
    return pr.keep(p);
  }

  std::shared_ptr<const SpaceBackend> base_;
  Region region_;
  std::unordered_set<std::size_t> keep_ids_;
};

}  // namespace

SigmaSpace restrict_space(const SigmaSpace& base, Region region) {
  return SigmaSpace(std::make_shared<RestrictedBackend>(base.backend(),
                                                        std::move(region)));
}

}  // namespace tgeom
