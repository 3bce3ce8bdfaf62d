#include "tgeom/sigma_core.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace tgeom {

double sigma(const SigmaSpace& space, const Point& p, const Point& q) {
  return space.sigma(p, q);
}

double gamma(const SigmaSpace& space, const Point& p0, const Point& p1,
             const Point& p2) {
  return space.sigma(p0, p1) + space.sigma(p0, p2) - space.sigma(p1, p2);
}

double two_point_scalar(const SigmaSpace& space, const Point& p0,
                        const Point& p1, const Point& q0, const Point& q1) {
  return space.sigma(p0, q1) + space.sigma(q0, p1) - space.sigma(p0, q0) -
         space.sigma(p1, q1);
}

Eigen::MatrixXd gram_matrix(const SigmaSpace& space, const Point& base,
                            std::span<const Point> others) {
  const int n = static_cast<int>(others.size());
  if (n < 1) throw ContractError("gram_matrix: need at least one vector");
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = gamma(space, base, others[i], others[i]);
    for (int k = i + 1; k < n; ++k) {
      const double v = gamma(space, base, others[i], others[k]);
      g(i, k) = v;
      g(k, i) = v;
    }
  }
  return g;
}

double lu_det(const Eigen::MatrixXd& m) {
  if (m.rows() == 1) return m(0, 0);
  if (m.rows() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m.partialPivLu().determinant();
}

double max_abs_entry(const Eigen::MatrixXd& m) {
  return m.cwiseAbs().maxCoeff();
}

bool det_is_zero(double det, double scale, int order, double tol) {
  return std::fabs(det) <= tol * std::pow(scale, order);
}

double gram_det(const SigmaSpace& space, const Multivector& mv) {
  if (mv.order() < 1)
    throw ContractError("gram_det: multivector order must be >= 1");
  // rank-deficient by construction; keeps the null-multivector
  // invariant exact
  if (mv.has_repeated_point()) {
    for (const auto& p : mv.points()) space.require_inside(p);
    return 0.0;
  }
  const auto& pts = mv.points();
  const Eigen::MatrixXd g =
      gram_matrix(space, pts.front(), {pts.data() + 1, pts.size() - 1});
  return lu_det(g);
}

double squared_length(const SigmaSpace& space, const Multivector& mv) {
  return gram_det(space, mv);
}

Eigen::MatrixXd mv_product_matrix(const SigmaSpace& space,
                                  const Multivector& a, const Multivector& b) {
  if (a.order() != b.order())
    throw ContractError("mv_scalar_product: order mismatch (" +
                        std::to_string(a.order()) + " vs " +
                        std::to_string(b.order()) + ")");
  if (a.order() < 1)
    throw ContractError("mv_scalar_product: order must be >= 1");
  const int n = a.order();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      m(i, k) = two_point_scalar(space, a[0], a[static_cast<std::size_t>(i) + 1],
                                 b[0], b[static_cast<std::size_t>(k) + 1]);
  return m;
}

double mv_scalar_product(const SigmaSpace& space, const Multivector& a,
                         const Multivector& b) {
  return lu_det(mv_product_matrix(space, a, b));
}

SignedLength mv_length(const SigmaSpace& space, const Multivector& a) {
  if (a.order() < 1)
    throw ContractError("mv_length: order must be >= 1");
  if (a.has_repeated_point()) {
    for (const auto& p : a.points()) space.require_inside(p);
    return SignedLength{0.0, 0.0, false};
  }
  return SignedLength::from_squared(mv_scalar_product(space, a, a));
}

}  // namespace tgeom
