#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "tgeom/errors.hpp"

namespace tgeom {

/// A point of a sigma-space: either a coordinate tuple (analytic backends)
/// or a table index (finite backends). Points compare by exact coordinate /
/// id equality only; sigma(P,Q) == 0 never implies P == Q.
class Point {
 public:
  Point() : rep_(std::vector<double>{}) {}
  explicit Point(std::vector<double> coords) : rep_(std::move(coords)) {}
  Point(std::initializer_list<double> coords)
      : rep_(std::vector<double>(coords)) {}

  static Point from_id(std::size_t id) {
    Point p;
    p.rep_ = id;
    return p;
  }

  bool has_coords() const {
    return std::holds_alternative<std::vector<double>>(rep_);
  }

  const std::vector<double>& coords() const {
    if (!has_coords())
      throw ContractError("Point: coordinate access on an id point");
    return std::get<std::vector<double>>(rep_);
  }

  std::size_t id() const {
    if (has_coords())
      throw ContractError("Point: id access on a coordinate point");
    return std::get<std::size_t>(rep_);
  }

  std::size_t dim() const { return coords().size(); }

  friend bool operator==(const Point& a, const Point& b) {
    return a.rep_ == b.rep_;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

  std::string describe() const;

 private:
  std::variant<std::vector<double>, std::size_t> rep_;
};

}  // namespace tgeom
