// tgeom command-line driver: reproducible experiments over world-function
// geometry. One JSON config in, one artifact (JSON or CSV) out; outputs are
// byte-identical for identical configs.
//
// Exit codes: 0 success, 1 usage/config error, 2 negative verdict.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tgeom/collinearity.hpp"
#include "tgeom/objects.hpp"
#include "tgeom/reconstruct.hpp"
#include "tgeom/space_spec.hpp"
#include "tgeom/spaces.hpp"

namespace {

using nlohmann::json;
using namespace tgeom;

constexpr const char* kPrngName = "mt19937_64-u53/v1";

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("config: invalid JSON in \"" + path + "\": " +
                          e.what());
  }
  return j;
}

void write_output(const std::optional<std::string>& out_path,
                  const std::string& payload) {
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output \"" + *out_path + "\"");
    out << payload;
  } else {
    std::cout << payload;
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double get_tol(const json& cfg) {
  if (!cfg.contains("tol")) return kDefaultTol;
  const double tol = cfg.at("tol").get<double>();
  if (!(tol > 0.0)) throw ValidationError("config: \"tol\" must be > 0");
  return tol;
}

Point parse_point(const json& j, const char* field) {
  if (!j.is_array() || j.empty())
    throw ValidationError(std::string("config: \"") + field +
                          "\" must be a coordinate array");
  std::vector<double> c;
  for (const auto& x : j) c.push_back(x.get<double>());
  return Point(std::move(c));
}

// mt19937_64 with the 53-bit mantissa mapping; uniform_real_distribution is
// implementation-defined, this is not
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : eng_(seed) {}
  double next(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 eng_;
};

struct SamplePlan {
  std::vector<Point> points;
  bool used_prng = false;
  std::uint64_t seed = 0;
};

SamplePlan gather_points(const SigmaSpace& space, const json& cfg) {
  SamplePlan plan;
  if (cfg.contains("points")) {
    for (const auto& p : cfg.at("points"))
      plan.points.push_back(parse_point(p, "points"));
    return plan;
  }
  if (cfg.contains("ids")) {
    for (const auto& i : cfg.at("ids"))
      plan.points.push_back(Point::from_id(i.get<std::size_t>()));
    return plan;
  }
  if (cfg.contains("sample")) {
    const json& s = cfg.at("sample");
    if (!space.analytic())
      throw ValidationError("config: \"sample\" needs a coordinate space");
    if (!s.contains("seed"))
      throw ValidationError("config: \"sample.seed\" is required");
    const int count = s.value("count", 0);
    if (count < 2) throw ValidationError("config: \"sample.count\" must be >= 2");
    const double lo = s.value("low", 0.0);
    const double hi = s.value("high", 1.0);
    if (!(lo < hi))
      throw ValidationError("config: sample range needs low < high");
    plan.seed = s.at("seed").get<std::uint64_t>();
    plan.used_prng = true;
    SeededUniform rng(plan.seed);
    const int dim = space.dim();
    while (static_cast<int>(plan.points.size()) < count) {
      std::vector<double> c(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i) c[static_cast<std::size_t>(i)] = rng.next(lo, hi);
      Point p(std::move(c));
      if (space.contains(p)) plan.points.push_back(std::move(p));
    }
    return plan;
  }
  if (space.point_count() > 0) {
    for (std::size_t i = 0; i < space.point_count(); ++i) {
      Point p = Point::from_id(i);
      if (space.contains(p)) plan.points.push_back(std::move(p));
    }
    return plan;
  }
  throw ValidationError(
      "config: provide \"points\", \"ids\" or \"sample\" for this space");
}

int cmd_reconstruct(const json& cfg, const std::optional<std::string>& out) {
  const SigmaSpace space = parse_space_spec(cfg.at("space"));
  const double tol = get_tol(cfg);
  const SamplePlan plan = gather_points(space, cfg);

  const DetectedDimension det = detect_dimension(space, plan.points, tol);
  const ReconstructionFrame frame = make_frame(space, det.basis, tol);
  const EmbeddabilityReport report =
      verify_conditions(space, plan.points, frame, tol);

  nlohmann::ordered_json j = report_to_json(report);
  if (plan.used_prng) {
    j["prng"] = kPrngName;
    j["seed"] = plan.seed;
  }
  write_output(out, j.dump(2) + "\n");
  return report.embeddable ? 0 : 2;
}

int cmd_embed_test(const json& cfg, const std::optional<std::string>& out) {
  const SigmaSpace space = parse_space_spec(cfg.at("space"));
  if (space.point_count() == 0)
    throw ValidationError("embed-test: space must be tabulated");
  const double tol = get_tol(cfg);
  const int n_max = cfg.value("n_max", 8);
  if (n_max < 1) throw ValidationError("config: \"n_max\" must be >= 1");
  const EmbeddabilityReport report = menger_embed_test(space, n_max, tol);
  write_output(out, report_to_json(report).dump(2) + "\n");
  return report.embeddable ? 0 : 2;
}

EnvelopeObject parse_object(const json& cfg) {
  const json& o = cfg.at("object");
  const std::string kind = o.at("kind").get<std::string>();
  std::vector<Point> skeleton;
  for (const auto& p : o.at("skeleton"))
    skeleton.push_back(parse_point(p, "object.skeleton"));
  if (kind == "sphere" || kind == "ellipsoid" || kind == "segment" ||
      kind == "ray" || kind == "tube") {
    EnvelopeKind k = kind == "sphere"      ? EnvelopeKind::Sphere
                     : kind == "ellipsoid" ? EnvelopeKind::Ellipsoid
                     : kind == "segment"   ? EnvelopeKind::Segment
                     : kind == "ray"       ? EnvelopeKind::Ray
                                           : EnvelopeKind::Tube;
    return EnvelopeObject{k, std::move(skeleton), std::nullopt};
  }
  if (kind == "tube_section")
    return EnvelopeObject{EnvelopeKind::TubeSection, std::move(skeleton),
                          parse_point(o.at("anchor"), "object.anchor")};
  throw ValidationError("config: unknown object kind \"" + kind + "\"");
}

GridRegion parse_region_box(const json& cfg, int dim) {
  const json& r = cfg.at("region");
  GridRegion region;
  for (const auto& x : r.at("low")) region.low.push_back(x.get<double>());
  for (const auto& x : r.at("high")) region.high.push_back(x.get<double>());
  if (r.contains("res")) {
    if (r.at("res").is_array())
      for (const auto& x : r.at("res")) region.res.push_back(x.get<int>());
    else
      region.res.assign(static_cast<std::size_t>(dim), r.at("res").get<int>());
  } else {
    region.res.assign(static_cast<std::size_t>(dim), 41);
  }
  return region;
}

std::string members_csv(int dim, const std::vector<GridMember>& members) {
  std::ostringstream csv;
  for (int i = 0; i < dim; ++i) csv << "x" << i << ",";
  csv << "envelope_value\n";
  for (const auto& m : members) {
    const auto& c = m.point.coords();
    for (double x : c) csv << fmt17(x) << ",";
    csv << fmt17(m.value) << "\n";
  }
  return csv.str();
}

int cmd_sample_object(const json& cfg, const std::optional<std::string>& out) {
  const SigmaSpace space = parse_space_spec(cfg.at("space"));
  if (!space.analytic())
    throw ValidationError("sample-object: sampling requires coordinates");
  const double tol = get_tol(cfg);
  const EnvelopeObject obj = parse_object(cfg);
  const GridRegion region = parse_region_box(cfg, space.dim());
  const auto members = grid_sample(space, obj, region, tol);
  write_output(out, members_csv(space.dim(), members));
  return 0;
}

int cmd_tube_classify(const json& cfg, const std::optional<std::string>& out) {
  const SigmaSpace space = parse_space_spec(cfg.at("space"));
  if (space.kind().find("minkowski") == std::string::npos)
    throw ValidationError("tube-classify: space must be minkowski");
  const double tol = get_tol(cfg);
  const Point x = parse_point(cfg.at("x"), "x");
  const Point xp = parse_point(cfg.at("x_prime"), "x_prime");
  const TubeClass cls = classify_tube(space, x, xp);
  const double sig = space.sigma(x, xp);

  nlohmann::ordered_json j;
  j["class"] = to_string(cls);
  j["sigma"] = sig;
  if (cls != TubeClass::Null) {
    std::vector<int> resolutions{41, 81};
    if (cfg.contains("resolutions")) {
      resolutions.clear();
      for (const auto& r : cfg.at("resolutions")) resolutions.push_back(r.get<int>());
      if (resolutions.size() != 2)
        throw ValidationError("config: \"resolutions\" must hold 2 entries");
    }
    GridRegion region;
    if (cfg.contains("region")) {
      region = parse_region_box(cfg, space.dim());
    } else {
      region.low.assign(static_cast<std::size_t>(space.dim()), -2.0);
      region.high.assign(static_cast<std::size_t>(space.dim()), 2.0);
    }
    const EnvelopeObject tube = make_tube({x, xp});
    std::vector<long> counts;
    for (int res : resolutions) {
      region.res.assign(static_cast<std::size_t>(space.dim()), res);
      counts.push_back(
          static_cast<long>(grid_sample(space, tube, region, tol).size()));
    }
    nlohmann::ordered_json witness;
    witness["resolutions"] = resolutions;
    witness["member_counts"] = counts;
    double expo = 0.0;
    if (counts[0] > 0 && counts[1] > 0)
      expo = std::log(static_cast<double>(counts[1]) / counts[0]) /
             std::log(static_cast<double>(resolutions[1]) / resolutions[0]);
    witness["scaling_exponent"] = expo;
    j["dimension_witness"] = witness;
  }
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int cmd_cone_sample(const json& cfg, const std::optional<std::string>& out) {
  const SigmaSpace space = parse_space_spec(cfg.at("space"));
  if (!space.analytic())
    throw ValidationError("cone-sample: space must be coordinate-based");
  if (!out)
    throw ValidationError(
        "cone-sample: --out PATH is required for the directions CSV");
  const double tol = get_tol(cfg);
  const Point p0 = parse_point(cfg.at("p0"), "p0");
  const Point p1 = parse_point(cfg.at("p1"), "p1");
  const Point q0 = parse_point(cfg.at("q0"), "q0");
  const int directions = cfg.value("directions", 2000);
  if (directions < 2)
    throw ValidationError("config: \"directions\" must be >= 2");
  const double radius = cfg.value("radius", 1.0);

  const ConeSampleResult cone =
      cone_sample(space, p0, p1, q0, directions, tol, radius);

  std::ostringstream csv;
  for (int i = 0; i < space.dim(); ++i) csv << "u" << i << ",";
  csv << "defect\n";
  for (const auto& d : cone.accepted) {
    for (double u : d.direction) csv << fmt17(u) << ",";
    csv << fmt17(d.defect) << "\n";
  }
  write_output(out, csv.str());

  nlohmann::ordered_json summary;
  summary["accepted_count"] = cone.accepted.size();
  summary["aperture_radians"] = cone.aperture;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tgeom: geometry computed from a world function"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_path;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_path, "output path (default: stdout)");
  };

  CLI::App* reconstruct = app.add_subcommand(
      "reconstruct", "detect dimension and verify the Euclideaness conditions");
  CLI::App* embed = app.add_subcommand(
      "embed-test", "smallest embedding dimension of a tabulated space");
  CLI::App* sample = app.add_subcommand(
      "sample-object", "grid-sample an envelope object to CSV");
  CLI::App* classify = app.add_subcommand(
      "tube-classify", "classify a Minkowski pair and measure tube scaling");
  CLI::App* cone = app.add_subcommand(
      "cone-sample", "sample the collinearity cone directions");
  for (CLI::App* sub : {reconstruct, embed, sample, classify, cone})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    const json cfg = load_config(config_path);
    if (reconstruct->parsed()) return cmd_reconstruct(cfg, out_path);
    if (embed->parsed()) return cmd_embed_test(cfg, out_path);
    if (sample->parsed()) return cmd_sample_object(cfg, out_path);
    if (classify->parsed()) return cmd_tube_classify(cfg, out_path);
    if (cone->parsed()) return cmd_cone_sample(cfg, out_path);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
