#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tgeom/sigma_core.hpp"
#include "tgeom/space.hpp"

namespace tgeom {

/// A rectilinear frame recovered from sigma alone: n+1 basis points, the
/// covariant metric g_ik = Gamma(P0,Pi,Pk), its inverse, and the eigenvalue
/// signature.
struct ReconstructionFrame {
  std::vector<Point> basis;  // P0 .. Pn
  Eigen::MatrixXd g_cov;
  Eigen::MatrixXd g_contra;
  int dim = 0;
  int sig_positive = 0;
  int sig_negative = 0;
};

/// Build a frame over basis points; fails (ContractError) when the Gram
/// matrix is singular at the zero-test tolerance.
ReconstructionFrame make_frame(const SigmaSpace& space,
                               std::vector<Point> basis,
                               double tol = kDefaultTol);

struct DetectedDimension {
  int dim = 0;
  std::vector<Point> basis;
};

/// Greedy dimension detection: grow the basis by the sample point that
/// maximizes |F_{k+1}| (first index wins ties) until every remaining point
/// gives F_{n+1} ~ 0. Fails when all pairs are null.
DetectedDimension detect_dimension(const SigmaSpace& space,
                                   std::span<const Point> sample,
                                   double tol = kDefaultTol);

/// Covariant coordinates x_i(P) = Gamma(P0, Pi, P).
std::vector<double> coordinates(const SigmaSpace& space,
                                const ReconstructionFrame& frame,
                                const Point& p);

/// sigma reconstructed from covariant coordinates:
/// 1/2 sum g^ik (x_i - x'_i)(x_k - x'_k).
double sigma_from_coords(const ReconstructionFrame& frame,
                         std::span<const double> xp,
                         std::span<const double> xq);

struct EmbeddabilityReport {
  bool embeddable = false;
  int dim = 0;
  int sig_positive = 0;
  int sig_negative = 0;
  double max_residual = 0.0;          // worst normalized |F_{n+1}|
  std::vector<std::size_t> witness;   // sample indices; non-empty iff rejected
  std::string basis_search;           // "", "exhaustive" or "greedy"
  std::string condition_iii = "not decidable at sample scale";
};

/// Euclideaness conditions at sample scale:
///   I   F_n(basis) != 0 and F_{n+1}(basis, Q) ~ 0 for every sample point,
///   II  sigma(P,Q) matches its coordinate reconstruction for all pairs,
///   IIIa the coordinate map is injective on the sample.
/// Residuals are normalized by max(1, max |sigma|) over the sample.
/// Failures are report content, not errors.
EmbeddabilityReport verify_conditions(const SigmaSpace& space,
                                      std::span<const Point> sample,
                                      const ReconstructionFrame& frame,
                                      double tol = kDefaultTol);

/// Smallest n <= n_max at which the finite space passes verify_conditions;
/// exhaustive over bases for point counts <= 12, greedy otherwise (the
/// report's basis_search field says which). Rejection carries a witness.
EmbeddabilityReport menger_embed_test(const SigmaSpace& space, int n_max = 8,
                                      double tol = kDefaultTol);

}  // namespace tgeom
