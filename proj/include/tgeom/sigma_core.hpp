#pragma once

#include <Eigen/Core>
#include <span>

#include "tgeom/multivector.hpp"
#include "tgeom/space.hpp"

namespace tgeom {

/// Default relative tolerance for determinant zero tests.
inline constexpr double kDefaultTol = 1e-9;

/// World function, domain-checked.
double sigma(const SigmaSpace& space, const Point& p, const Point& q);

/// Sigma-immanent scalar product of vectors P0P1 and P0P2:
/// Gamma(P0,P1,P2) = sigma(P0,P1) + sigma(P0,P2) - sigma(P1,P2).
double gamma(const SigmaSpace& space, const Point& p0, const Point& p1,
             const Point& p2);

/// Scalar product of vectors P0P1 and Q0Q1 anchored at different points:
/// sigma(P0,Q1) + sigma(Q0,P1) - sigma(P0,Q0) - sigma(P1,Q1).
/// Reduces to gamma when Q0 = P0.
double two_point_scalar(const SigmaSpace& space, const Point& p0,
                        const Point& p1, const Point& q0, const Point& q1);

/// Symmetric matrix of Gamma(base, others[i], others[k]).
Eigen::MatrixXd gram_matrix(const SigmaSpace& space, const Point& base,
                            std::span<const Point> others);

/// Gram determinant F_n of an order-n multivector; F_1 = 2 sigma(P0,P1).
/// Exactly 0 for any multivector with a repeated point.
double gram_det(const SigmaSpace& space, const Multivector& mv);

/// Squared length of the multivector, |M|^2 = (n! S_n)^2 = F_n.
double squared_length(const SigmaSpace& space, const Multivector& mv);

/// Matrix of pairwise products (P0Pi . Q0Qk) for two multivectors of equal
/// order.
Eigen::MatrixXd mv_product_matrix(const SigmaSpace& space,
                                  const Multivector& a, const Multivector& b);

/// Scalar sigma-product (A.B) = det || (P0Pi . Q0Qk) ||. (A.A) equals
/// F_n(A) up to evaluation-order rounding.
double mv_scalar_product(const SigmaSpace& space, const Multivector& a,
                         const Multivector& b);

/// Length of a multivector, imaginary when (A.A) < 0.
SignedLength mv_length(const SigmaSpace& space, const Multivector& a);

/// Largest |entry| of a Gram-type matrix; the scale s of the determinant
/// zero test.
double max_abs_entry(const Eigen::MatrixXd& m);

/// Scale-free zero test: |det| <= tol * s^order, where order is the matrix
/// dimension. F scales as (length^2)^order, so an absolute tolerance would
/// break under unit rescaling.
bool det_is_zero(double det, double scale, int order, double tol = kDefaultTol);

/// Determinant via pivoted LU (no cofactor expansion).
double lu_det(const Eigen::MatrixXd& m);

}  // namespace tgeom
