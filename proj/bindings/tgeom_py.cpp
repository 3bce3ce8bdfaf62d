// _tgeom: python bindings for the world-function geometry core.
//
// Points cross the boundary as plain python objects: a sequence of floats
// is a coordinate point, an int is a table id. Reports come back as dicts
// mirroring the CLI's JSON fields.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "tgeom/collinearity.hpp"
#include "tgeom/objects.hpp"
#include "tgeom/reconstruct.hpp"
#include "tgeom/spaces.hpp"

namespace py = pybind11;
using namespace tgeom;

namespace {

Point to_point(py::handle obj) {
  if (py::isinstance<py::int_>(obj))
    return Point::from_id(obj.cast<std::size_t>());
  return Point(obj.cast<std::vector<double>>());
}

std::vector<Point> to_points(py::handle seq) {
  std::vector<Point> pts;
  for (py::handle item : seq) pts.push_back(to_point(item));
  return pts;
}

py::object from_point(const Point& p) {
  if (p.has_coords()) return py::cast(p.coords());
  return py::cast(p.id());
}

py::list from_matrix(const Eigen::MatrixXd& m) {
  py::list rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    py::list row;
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.append(m(i, j));
    rows.append(row);
  }
  return rows;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::Index cols = 0;
  for (const auto& r : rows)
    cols = std::max(cols, static_cast<Eigen::Index>(r.size()));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, std::max(cols, Eigen::Index{1}));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != m.cols())
      throw ValidationError("sigma table rows must have equal length");
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

py::dict report_dict(const EmbeddabilityReport& r) {
  py::dict d;
  d["embeddable"] = r.embeddable;
  d["dim"] = r.dim;
  d["signature"] = py::make_tuple(r.sig_positive, r.sig_negative);
  d["max_residual"] = r.max_residual;
  d["witness"] = r.witness;
  if (!r.basis_search.empty()) d["basis_search"] = r.basis_search;
  d["condition_iii"] = r.condition_iii;
  return d;
}

EnvelopeObject build_object(const std::string& kind, py::handle skeleton,
                            py::object anchor) {
  std::vector<Point> pts = to_points(skeleton);
  if (kind == "sphere")
    return EnvelopeObject{EnvelopeKind::Sphere, std::move(pts), std::nullopt};
  if (kind == "ellipsoid")
    return EnvelopeObject{EnvelopeKind::Ellipsoid, std::move(pts), std::nullopt};
  if (kind == "segment")
    return EnvelopeObject{EnvelopeKind::Segment, std::move(pts), std::nullopt};
  if (kind == "ray")
    return EnvelopeObject{EnvelopeKind::Ray, std::move(pts), std::nullopt};
  if (kind == "tube")
    return EnvelopeObject{EnvelopeKind::Tube, std::move(pts), std::nullopt};
  if (kind == "tube_section") {
    if (anchor.is_none())
      throw ContractError("tube_section: anchor point required");
    return EnvelopeObject{EnvelopeKind::TubeSection, std::move(pts),
                          to_point(anchor)};
  }
  throw ContractError("unknown envelope kind \"" + kind + "\"");
}

const char* signature_name(EnvelopeSignature s) {
  switch (s) {
    case EnvelopeSignature::Real: return "real";
    case EnvelopeSignature::Imaginary: return "imaginary";
    case EnvelopeSignature::Mixed: return "mixed";
  }
  return "?";
}

}  // namespace

PYBIND11_MODULE(_tgeom, m) {
  m.doc() = "Geometry computed from a world function sigma = rho^2 / 2";

  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<ContractError>(m, "ContractError");
  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<UnsupportedError>(m, "UnsupportedError");

  py::class_<SigmaSpace>(m, "Space")
      .def_property_readonly("analytic", &SigmaSpace::analytic)
      .def_property_readonly("dim", &SigmaSpace::dim)
      .def_property_readonly("point_count", &SigmaSpace::point_count)
      .def_property_readonly("kind", &SigmaSpace::kind)
      .def("contains",
           [](const SigmaSpace& s, py::handle p) { return s.contains(to_point(p)); })
      .def("__repr__",
           [](const SigmaSpace& s) { return "<tgeom.Space " + s.kind() + ">"; });

  py::class_<ReconstructionFrame>(m, "Frame")
      .def_property_readonly("dim",
                             [](const ReconstructionFrame& f) { return f.dim; })
      .def_property_readonly("signature",
                             [](const ReconstructionFrame& f) {
                               return py::make_tuple(f.sig_positive,
                                                     f.sig_negative);
                             })
      .def_property_readonly("basis",
                             [](const ReconstructionFrame& f) {
                               py::list out;
                               for (const auto& p : f.basis)
                                 out.append(from_point(p));
                               return out;
                             })
      .def_property_readonly("g_cov",
                             [](const ReconstructionFrame& f) {
                               return from_matrix(f.g_cov);
                             })
      .def_property_readonly("g_contra", [](const ReconstructionFrame& f) {
        return from_matrix(f.g_contra);
      });

  m.def("euclidean", &make_euclidean, py::arg("dim"));
  m.def("minkowski", &make_minkowski, py::arg("dim"));
  m.def(
      "tabulated",
      [](const std::vector<std::vector<double>>& table) {
        return make_tabulated(to_matrix(table));
      },
      py::arg("sigma_table"));
  m.def(
      "deformed",
      [](const SigmaSpace& base, const std::string& kind, double a, double b) {
        if (kind == "scale") return make_deformed(base, ScaleDistortion{a});
        if (kind == "affine_cap")
          return make_deformed(base, AffineCapDistortion{a, b});
        throw ValidationError("unknown distortion kind \"" + kind + "\"");
      },
      py::arg("base"), py::arg("kind"), py::arg("a"), py::arg("b") = 1.0);
  m.def(
      "restrict_halfspace",
      [](const SigmaSpace& base, std::vector<double> normal, double offset) {
        return restrict_space(base, Halfspace{std::move(normal), offset});
      },
      py::arg("base"), py::arg("normal"), py::arg("offset"));
  m.def(
      "restrict_ball_complement",
      [](const SigmaSpace& base, std::vector<double> center, double radius) {
        return restrict_space(base, BallComplement{std::move(center), radius});
      },
      py::arg("base"), py::arg("center"), py::arg("radius"));
  m.def(
      "restrict_ids",
      [](const SigmaSpace& base, std::vector<std::size_t> ids) {
        return restrict_space(base, IdSubset{std::move(ids)});
      },
      py::arg("base"), py::arg("ids"));

  m.def(
      "sigma",
      [](const SigmaSpace& s, py::handle p, py::handle q) {
        return s.sigma(to_point(p), to_point(q));
      },
      py::arg("space"), py::arg("p"), py::arg("q"));
  m.def(
      "gamma",
      [](const SigmaSpace& s, py::handle p0, py::handle p1, py::handle p2) {
        return gamma(s, to_point(p0), to_point(p1), to_point(p2));
      },
      py::arg("space"), py::arg("p0"), py::arg("p1"), py::arg("p2"));
  m.def(
      "two_point_scalar",
      [](const SigmaSpace& s, py::handle p0, py::handle p1, py::handle q0,
         py::handle q1) {
        return two_point_scalar(s, to_point(p0), to_point(p1), to_point(q0),
                                to_point(q1));
      },
      py::arg("space"), py::arg("p0"), py::arg("p1"), py::arg("q0"),
      py::arg("q1"));
  m.def(
      "gram_det",
      [](const SigmaSpace& s, py::handle points) {
        return gram_det(s, Multivector(to_points(points)));
      },
      py::arg("space"), py::arg("points"));
  m.def(
      "squared_length",
      [](const SigmaSpace& s, py::handle points) {
        return squared_length(s, Multivector(to_points(points)));
      },
      py::arg("space"), py::arg("points"));
  m.def(
      "mv_scalar_product",
      [](const SigmaSpace& s, py::handle a, py::handle b) {
        return mv_scalar_product(s, Multivector(to_points(a)),
                                 Multivector(to_points(b)));
      },
      py::arg("space"), py::arg("a"), py::arg("b"));
  m.def(
      "mv_length",
      [](const SigmaSpace& s, py::handle a) {
        const SignedLength len = mv_length(s, Multivector(to_points(a)));
        py::dict d;
        d["squared"] = len.squared;
        d["magnitude"] = len.magnitude;
        d["imaginary"] = len.imaginary;
        return d;
      },
      py::arg("space"), py::arg("a"));

  m.def(
      "is_collinear",
      [](const SigmaSpace& s, py::handle a, py::handle b, double tol) {
        const CollinearityVerdict v = is_collinear(
            s, Multivector(to_points(a)), Multivector(to_points(b)), tol);
        py::dict d;
        d["collinear"] = v.collinear;
        d["orientation"] = to_string(v.orientation);
        d["defect"] = v.defect;
        return d;
      },
      py::arg("space"), py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTol);
  m.def(
      "tube_through_point_member",
      [](const SigmaSpace& s, py::handle p0, py::handle p1, py::handle q0,
         py::handle r, double tol) {
        return tube_through_point_member(s, to_point(p0), to_point(p1),
                                         to_point(q0), to_point(r), tol);
      },
      py::arg("space"), py::arg("p0"), py::arg("p1"), py::arg("q0"),
      py::arg("r"), py::arg("tol") = kDefaultTol);
  m.def(
      "cone_sample",
      [](const SigmaSpace& s, py::handle p0, py::handle p1, py::handle q0,
         int samples, double tol, double radius) {
        const ConeSampleResult res = cone_sample(
            s, to_point(p0), to_point(p1), to_point(q0), samples, tol, radius);
        py::list accepted;
        for (const auto& d : res.accepted) {
          py::dict e;
          e["direction"] = d.direction;
          e["point"] = from_point(d.point);
          e["defect"] = d.defect;
          e["orientation"] = to_string(d.orientation);
          accepted.append(e);
        }
        py::dict out;
        out["accepted"] = accepted;
        out["accepted_count"] = res.accepted.size();
        out["aperture_radians"] = res.aperture;
        out["total_directions"] = res.total_directions;
        return out;
      },
      py::arg("space"), py::arg("p0"), py::arg("p1"), py::arg("q0"),
      py::arg("samples") = 2000, py::arg("tol") = kDefaultTol,
      py::arg("radius") = 1.0);

  m.def(
      "envelope_value",
      [](const SigmaSpace& s, const std::string& kind, py::handle skeleton,
         py::handle r, py::object anchor) {
        const EnvelopeValue v =
            envelope_value(s, build_object(kind, skeleton, anchor), to_point(r));
        py::dict d;
        d["value"] = v.value;
        d["signature"] = signature_name(v.signature);
        d["scale"] = v.scale;
        return d;
      },
      py::arg("space"), py::arg("kind"), py::arg("skeleton"), py::arg("r"),
      py::arg("anchor") = py::none());
  m.def(
      "is_member",
      [](const SigmaSpace& s, const std::string& kind, py::handle skeleton,
         py::handle r, double tol, py::object anchor) {
        return is_member(s, build_object(kind, skeleton, anchor), to_point(r),
                         tol);
      },
      py::arg("space"), py::arg("kind"), py::arg("skeleton"), py::arg("r"),
      py::arg("tol") = kDefaultTol, py::arg("anchor") = py::none());
  m.def(
      "tube_member",
      [](const SigmaSpace& s, py::handle skeleton, py::handle r, double tol) {
        return tube_member(s, to_points(skeleton), to_point(r), tol);
      },
      py::arg("space"), py::arg("skeleton"), py::arg("r"),
      py::arg("tol") = kDefaultTol);
  m.def(
      "tube_section_member",
      [](const SigmaSpace& s, py::handle skeleton, py::handle anchor,
         py::handle r, double tol) {
        return tube_section_member(s, to_points(skeleton), to_point(anchor),
                                   to_point(r), tol);
      },
      py::arg("space"), py::arg("skeleton"), py::arg("anchor"), py::arg("r"),
      py::arg("tol") = kDefaultTol);
  m.def(
      "classify_tube",
      [](const SigmaSpace& s, py::handle x, py::handle xp) {
        return std::string(to_string(classify_tube(s, to_point(x), to_point(xp))));
      },
      py::arg("space"), py::arg("x"), py::arg("x_prime"));
  m.def(
      "grid_sample",
      [](const SigmaSpace& s, const std::string& kind, py::handle skeleton,
         std::vector<double> low, std::vector<double> high,
         std::vector<int> res, double tol, py::object anchor) {
        const auto members = grid_sample(s, build_object(kind, skeleton, anchor),
                                         GridRegion{std::move(low),
                                                    std::move(high),
                                                    std::move(res)},
                                         tol);
        py::list out;
        for (const auto& gm : members)
          out.append(py::make_tuple(from_point(gm.point), gm.value));
        return out;
      },
      py::arg("space"), py::arg("kind"), py::arg("skeleton"), py::arg("low"),
      py::arg("high"), py::arg("res"), py::arg("tol") = kDefaultTol,
      py::arg("anchor") = py::none());

  m.def(
      "detect_dimension",
      [](const SigmaSpace& s, py::handle sample, double tol) {
        const DetectedDimension d =
            detect_dimension(s, to_points(sample), tol);
        py::list basis;
        for (const auto& p : d.basis) basis.append(from_point(p));
        return py::make_tuple(d.dim, basis);
      },
      py::arg("space"), py::arg("sample"), py::arg("tol") = kDefaultTol);
  m.def(
      "make_frame",
      [](const SigmaSpace& s, py::handle basis, double tol) {
        return make_frame(s, to_points(basis), tol);
      },
      py::arg("space"), py::arg("basis"), py::arg("tol") = kDefaultTol);
  m.def(
      "coordinates",
      [](const SigmaSpace& s, const ReconstructionFrame& f, py::handle p) {
        return coordinates(s, f, to_point(p));
      },
      py::arg("space"), py::arg("frame"), py::arg("p"));
  m.def(
      "sigma_from_coords",
      [](const ReconstructionFrame& f, const std::vector<double>& xp,
         const std::vector<double>& xq) { return sigma_from_coords(f, xp, xq); },
      py::arg("frame"), py::arg("xp"), py::arg("xq"));
  m.def(
      "verify_conditions",
      [](const SigmaSpace& s, py::handle sample, const ReconstructionFrame& f,
         double tol) {
        return report_dict(verify_conditions(s, to_points(sample), f, tol));
      },
      py::arg("space"), py::arg("sample"), py::arg("frame"),
      py::arg("tol") = kDefaultTol);
  m.def(
      "menger_embed_test",
      [](const SigmaSpace& s, int n_max, double tol) {
        return report_dict(menger_embed_test(s, n_max, tol));
      },
      py::arg("space"), py::arg("n_max") = 8, py::arg("tol") = kDefaultTol);
  m.def(
      "metric_from_sigma_fd",
      [](const SigmaSpace& s, py::handle x, double h) {
        return from_matrix(metric_from_sigma_fd(s, to_point(x), h));
      },
      py::arg("space"), py::arg("x"), py::arg("h") = 1e-4);
}
