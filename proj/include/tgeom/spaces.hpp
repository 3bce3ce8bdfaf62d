#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <variant>

#include "tgeom/space.hpp"

namespace tgeom {

/// Proper Euclidean space: sigma(x,x') = 1/2 sum (x_i - x'_i)^2.
SigmaSpace make_euclidean(int dim);

/// Pseudoeuclidean space of index 1, signature diag{1,-1,...,-1}:
/// sigma(x,x') = 1/2 [(dx^0)^2 - sum_{i>=1} (dx^i)^2]. Needs dim >= 2.
SigmaSpace make_minkowski(int dim);

/// Finite sigma-space over an explicit N x N table. The table must be
/// bit-exactly symmetric with a zero diagonal; offending index pairs are
/// reported otherwise.
SigmaSpace make_tabulated(const Eigen::MatrixXd& table);

/// Pointwise monotone distortions of a base sigma. D(0) = 0 holds for both
/// named primitives, so the zero diagonal survives.
struct ScaleDistortion {
  double lambda = 1.0;  // sigma' = lambda * sigma, lambda > 0
};
struct AffineCapDistortion {
  double d = 0.0;       // sigma' = sigma + d * sign(sigma) * min(|sigma|, sigma0)
  double sigma0 = 1.0;  // d > -1, sigma0 > 0
};
using Distortion = std::variant<ScaleDistortion, AffineCapDistortion>;

SigmaSpace make_deformed(const SigmaSpace& base, const Distortion& distortion);

/// Coordinate space with a caller-supplied world function. The function
/// must be symmetric with zero diagonal; this is the extension point for
/// world functions beyond the built-in backends.
SigmaSpace make_function_space(
    int dim,
    std::function<double(std::span<const double>, std::span<const double>)> sigma,
    std::string name = "custom");

/// Finite-difference metric tensor g_ik(x) = -d^2 sigma / dx^i dx'^k at
/// x' = x, via a 4-point cross stencil with steps +-h; O(h^2) accurate.
/// Coordinate backends only.
Eigen::MatrixXd metric_from_sigma_fd(const SigmaSpace& space, const Point& x,
                                     double h);

}  // namespace tgeom
