#include "tgeom/spaces.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace tgeom {

namespace {

class CoordinateBackend : public SpaceBackend {
 public:
  explicit CoordinateBackend(int dim) : dim_(dim) {}

  bool contains(const Point& p) const override {
    return p.has_coords() && static_cast<int>(p.dim()) == dim_;
  }
  bool has_coordinates() const override { return true; }
  int dim() const override { return dim_; }
  std::size_t point_count() const override { return 0; }

 protected:
  int dim_;
};

class EuclideanBackend : public CoordinateBackend {
 public:
  using CoordinateBackend::CoordinateBackend;

  double sigma(const Point& p, const Point& q) const override {
    const auto& x = p.coords();
    const auto& y = q.coords();
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const double d = x[i] - y[i];
      acc += d * d;
    }
    return 0.5 * acc;
  }

  std::string kind() const override {
    return "euclidean(" + std::to_string(dim_) + ")";
  }
};

class MinkowskiBackend : public CoordinateBackend {
 public:
  using CoordinateBackend::CoordinateBackend;

  double sigma(const Point& p, const Point& q) const override {
    const auto& x = p.coords();
    const auto& y = q.coords();
    const double dt = x[0] - y[0];
    double spatial = 0.0;
    for (int i = 1; i < dim_; ++i) {
      const double d = x[i] - y[i];
      spatial += d * d;
    }
    return 0.5 * (dt * dt - spatial);
  }

  std::string kind() const override {
    return "minkowski(" + std::to_string(dim_) + ")";
  }
};

class TabulatedBackend : public SpaceBackend {
 public:
  explicit TabulatedBackend(Eigen::MatrixXd table) : table_(std::move(table)) {}

  double sigma(const Point& p, const Point& q) const override {
    return table_(static_cast<Eigen::Index>(p.id()),
                  static_cast<Eigen::Index>(q.id()));
  }

  bool contains(const Point& p) const override {
    return !p.has_coords() &&
           p.id() < static_cast<std::size_t>(table_.rows());
  }
  bool has_coordinates() const override { return false; }
  int dim() const override { return 0; }
  std::size_t point_count() const override {
    return static_cast<std::size_t>(table_.rows());
  }
  std::string kind() const override {
    return "table(" + std::to_string(table_.rows()) + ")";
  }

 private:
  Eigen::MatrixXd table_;
};

double apply_distortion(const Distortion& d, double s) {
  if (const auto* sc = std::get_if<ScaleDistortion>(&d)) return sc->lambda * s;
  const auto& ac = std::get<AffineCapDistortion>(d);
  const double capped = std::min(std::fabs(s), ac.sigma0);
  return s + ac.d * (s < 0.0 ? -capped : capped);
}

class DeformedBackend : public SpaceBackend {
 public:
  DeformedBackend(std::shared_ptr<const SpaceBackend> base, Distortion d)
      : base_(std::move(base)), distortion_(d) {}

  double sigma(const Point& p, const Point& q) const override {
    return apply_distortion(distortion_, base_->sigma(p, q));
  }

  bool contains(const Point& p) const override { return base_->contains(p); }
  bool has_coordinates() const override { return base_->has_coordinates(); }
  int dim() const override { return base_->dim(); }
  std::size_t point_count() const override { return base_->point_count(); }
  std::string kind() const override { return "deformed " + base_->kind(); }

 private:
  std::shared_ptr<const SpaceBackend> base_;
  Distortion distortion_;
};

class FunctionBackend : public CoordinateBackend {
 public:
  FunctionBackend(
      int dim,
      std::function<double(std::span<const double>, std::span<const double>)> f,
      std::string name)
      : CoordinateBackend(dim), f_(std::move(f)), name_(std::move(name)) {}

  double sigma(const Point& p, const Point& q) const override {
    return f_(p.coords(), q.coords());
  }

  std::string kind() const override {
    return name_ + "(" + std::to_string(dim_) + ")";
  }

 private:
  std::function<double(std::span<const double>, std::span<const double>)> f_;
  std::string name_;
};

}  // namespace

SigmaSpace make_euclidean(int dim) {
  if (dim < 1) throw ContractError("make_euclidean: dim must be >= 1");
  return SigmaSpace(std::make_shared<EuclideanBackend>(dim));
}

SigmaSpace make_minkowski(int dim) {
  if (dim < 2) throw ContractError("make_minkowski: dim must be >= 2");
  return SigmaSpace(std::make_shared<MinkowskiBackend>(dim));
}

SigmaSpace make_tabulated(const Eigen::MatrixXd& table) {
  if (table.rows() != table.cols())
    throw ValidationError("make_tabulated: sigma table must be square");
  if (table.rows() < 1)
    throw ValidationError("make_tabulated: sigma table must be non-empty");
  std::ostringstream bad;
  int bad_count = 0;
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    if (table(i, i) != 0.0) {
      if (bad_count++) bad << ", ";
      bad << "diagonal (" << i << "," << i << ")";
    }
    for (Eigen::Index j = i + 1; j < table.cols(); ++j) {
      // bit-exact symmetry required: the table is the ground truth
      if (table(i, j) != table(j, i)) {
        if (bad_count++) bad << ", ";
        bad << "asymmetric (" << i << "," << j << ")";
      }
    }
  }
  if (bad_count > 0)
    throw ValidationError("make_tabulated: invalid sigma table: " + bad.str());
  return SigmaSpace(std::make_shared<TabulatedBackend>(table));
}

SigmaSpace make_deformed(const SigmaSpace& base, const Distortion& distortion) {
  if (const auto* sc = std::get_if<ScaleDistortion>(&distortion)) {
    if (!(sc->lambda > 0.0))
      throw ValidationError("make_deformed: scale lambda must be > 0");
  }
  if (const auto* ac = std::get_if<AffineCapDistortion>(&distortion)) {
    if (!(ac->d > -1.0))
      throw ValidationError("make_deformed: affine_cap d must be > -1");
    if (!(ac->sigma0 > 0.0))
      throw ValidationError("make_deformed: affine_cap sigma0 must be > 0");
  }
  return SigmaSpace(
      std::make_shared<DeformedBackend>(base.backend(), distortion));
}

SigmaSpace make_function_space(
    int dim,
    std::function<double(std::span<const double>, std::span<const double>)> sigma,
    std::string name) {
  if (dim < 1) throw ContractError("make_function_space: dim must be >= 1");
  if (!sigma) throw ContractError("make_function_space: null world function");
  return SigmaSpace(
      std::make_shared<FunctionBackend>(dim, std::move(sigma), std::move(name)));
}

Eigen::MatrixXd metric_from_sigma_fd(const SigmaSpace& space, const Point& x,
                                     double h) {
  if (!space.analytic())
    throw UnsupportedError(
        "metric_from_sigma_fd: needs a coordinate backend, got " +
        space.kind());
  if (!(h > 0.0))
    throw ContractError("metric_from_sigma_fd: step h must be > 0");
  space.require_inside(x);

  const int n = space.dim();
  const auto& c = x.coords();
  Eigen::MatrixXd g(n, n);
  const auto shifted = [&](int axis, double step) {
    std::vector<double> v = c;
    v[axis] += step;
    return Point(std::move(v));
  };
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      // mixed partial d^2 sigma / dx^i dx'^k by the 4-point cross stencil
      const double pp = space.sigma(shifted(i, h), shifted(k, h));
      const double pm = space.sigma(shifted(i, h), shifted(k, -h));
      const double mp = space.sigma(shifted(i, -h), shifted(k, h));
      const double mm = space.sigma(shifted(i, -h), shifted(k, -h));
      g(i, k) = -(pp - pm - mp + mm) / (4.0 * h * h);
    }
  }
  return g;
}

}  // namespace tgeom
