#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "tgeom/errors.hpp"
#include "tgeom/point.hpp"

namespace tgeom {

/// An ordered list of n+1 points. Order is part of the identity; repeated
/// points are allowed and make the multivector null (zero length).
class Multivector {
 public:
  explicit Multivector(std::vector<Point> points)
      : points_(std::move(points)) {
    if (points_.empty())
      throw ContractError("Multivector: point list must be non-empty");
  }
  Multivector(std::initializer_list<Point> points)
      : Multivector(std::vector<Point>(points)) {}

  int order() const { return static_cast<int>(points_.size()) - 1; }
  const std::vector<Point>& points() const { return points_; }
  const Point& origin() const { return points_.front(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  bool has_repeated_point() const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = i + 1; j < points_.size(); ++j)
        if (points_[i] == points_[j]) return true;
    return false;
  }

 private:
  std::vector<Point> points_;
};

/// Length of a multivector: magnitude sqrt(|squared|) with an imaginary
/// flag instead of a complex type, so ordering stays well-defined.
struct SignedLength {
  double squared = 0.0;
  double magnitude = 0.0;
  bool imaginary = false;

  static SignedLength from_squared(double sq) {
    return SignedLength{sq, std::sqrt(std::fabs(sq)), sq < 0.0};
  }
};

}  // namespace tgeom
