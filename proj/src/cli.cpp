#include "fatou/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fatou/basins.hpp"
#include "fatou/catalog.hpp"
#include "fatou/error.hpp"
#include "fatou/json_io.hpp"
#include "fatou/lifting.hpp"
#include "fatou/rays.hpp"
#include "fatou/verify.hpp"

namespace fatou {

namespace {

using io::Json;

// Bad command-line input, as opposed to a failed computation.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, const std::string& flag, size_t count) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + text + "' is not a comma-separated list of numbers");
    }
  }
  if (out.size() != count) {
    throw UsageError(flag + ": expected " + std::to_string(count) + " comma-separated numbers, got '" + text + "'");
  }
  return out;
}

Complex parse_complex(const std::string& text, const std::string& flag) {
  if (text.find(',') == std::string::npos) return {parse_numbers(text, flag, 1)[0], 0.0};
  const auto v = parse_numbers(text, flag, 2);
  return {v[0], v[1]};
}

Json read_json_file(const std::string& path, const std::string& flag) {
  std::ifstream in(path);
  if (!in) throw UsageError(flag + ": cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": '" + path + "' is not valid JSON (" + e.what() + ")");
  }
}

RationalMap load_map(const std::string& selector) {
  if (std::filesystem::is_regular_file(selector)) {
    try {
      return io::map_from_json(read_json_file(selector, "--map"));
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string("--map: ") + e.what());
    }
  }
  try {
    return catalog::lookup(selector);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--map: ") + e.what());
  }
}

RayAngle load_angle(const std::string& text, const std::string& flag) {
  try {
    return RayAngle::parse(text);
  } catch (const InvalidArgument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

SpherePoint load_point(const std::string& text, const std::string& flag) {
  if (text == "inf") return SpherePoint::infinity();
  return SpherePoint(parse_complex(text, flag));
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("writing '" + path + "' failed");
}

struct Options {
  std::string map;
  // render
  std::string bounds = "-3,3,-3,3";
  int width = 400;
  int height = 400;
  double trap = 1e-6;
  int max_iter = 500;
  std::string out_path;
  std::string meta_path;
  // portrait
  double cycle_tol = 1e-9;
  // periodic
  int period = 1;
  long degree_bound = kComposeDegreeBound;
  // ray
  std::string angle;
  std::string coland_angle;
  std::string basin = "inf";
  int depth = RayOptions{}.depth;
  double r0 = RayOptions{}.r0;
  double landing_tol = RayOptions{}.landing_tol;
  bool orbit = false;
  // lift
  std::string circle_spec;
  std::string curve_path;
  int vertices = 256;
  std::string omega = "1e6,0";
  double eps = LiftOptions{}.eps;
  int steps = 0;
  // catalog
  int rabbit_degree = 0;
  bool pinch = false;
  // verify
  std::vector<std::string> only;
  std::string cubic_reference;
};

int cmd_render(const Options& o, std::ostream& out) {
  const RationalMap f = load_map(o.map);
  const auto b = parse_numbers(o.bounds, "--bounds", 4);
  if (o.width < 1 || o.height < 1) throw UsageError("--width/--height: resolution must be at least 1");
  if (!(o.trap > 0.0)) throw UsageError("--trap: must be positive");
  BasinOptions opts;
  opts.trap_radius = o.trap;
  opts.max_iterations = o.max_iter;
  const BasinGrid grid = classify_grid(f, critical_portrait(f), {b[0], b[1], b[2], b[3]}, o.width, o.height, opts);
  const ComponentLabeling labels = label_components(grid);
  write_file(o.out_path, render_ppm(grid));
  Json meta = io::report("render", io::grid_metadata(grid, labels));
  meta["image"] = o.out_path;
  const std::string meta_path = o.meta_path.empty() ? o.out_path + ".json" : o.meta_path;
  write_file(meta_path, meta.dump(2) + "\n");
  Json body;
  body["image"] = o.out_path;
  body["metadata"] = meta_path;
  body["width"] = grid.width;
  body["height"] = grid.height;
  body["cycles"] = meta["cycles"];
  body["component_count"] = labels.components.size();
  body["unresolved_cells"] = meta["unresolved_cells"];
  emit(out, io::report("render", body));
  return 0;
}

int cmd_portrait(const Options& o, std::ostream& out) {
  const RationalMap f = load_map(o.map);
  if (!(o.cycle_tol > 0.0)) throw UsageError("--tol: must be positive");
  CycleOptions opts;
  opts.tol = o.cycle_tol;
  Json body;
  body["map"] = io::to_json(f);
  const Json p = io::to_json(critical_portrait(f, opts));
  for (auto it = p.begin(); it != p.end(); ++it) body[it.key()] = it.value();
  emit(out, io::report("portrait", body));
  return 0;
}

int cmd_periodic(const Options& o, std::ostream& out) {
  const RationalMap f = load_map(o.map);
  if (o.period < 1) throw UsageError("--period: must be at least 1");
  Json body;
  body["period"] = o.period;
  const Json p = io::to_json(periodic_points(f, o.period, o.degree_bound));
  for (auto it = p.begin(); it != p.end(); ++it) body[it.key()] = it.value();
  emit(out, io::report("periodic", body));
  return 0;
}

int cmd_ray(const Options& o, std::ostream& out) {
  const RationalMap f = load_map(o.map);
  const RayAngle t = load_angle(o.angle, "--angle");
  const SpherePoint basin = load_point(o.basin, "--basin");
  RayOptions opts;
  opts.depth = o.depth;
  opts.r0 = o.r0;
  opts.landing_tol = o.landing_tol;
  if (opts.depth < opts.window) throw UsageError("--depth: must be at least " + std::to_string(opts.window));
  if (!(opts.r0 > 1.0)) throw UsageError("--r0: must exceed 1");
  if (!(opts.landing_tol > 0.0)) throw UsageError("--tol: must be positive");

  const auto traces = trace_ray_orbit(f, basin, t, opts);
  Json body = io::to_json(traces.front());
  if (o.orbit) {
    Json all = Json::array();
    for (const auto& r : traces) all.push_back(io::to_json(r));
    body["orbit"] = all;
  }
  if (!o.coland_angle.empty()) {
    const RayAngle t2 = load_angle(o.coland_angle, "--coland");
    const RayTrace other = trace_ray(f, basin, t2, opts);
    Json c;
    c["angle"] = t2.to_string();
    c["landed"] = other.landed;
    c["landing"] = other.landed ? io::to_json(other.landing) : Json(nullptr);
    if (traces.front().landed && other.landed) {
      const double gap = chordal(traces.front().landing, other.landing);
      c["chordal_gap"] = gap;
      c["coland"] = gap < opts.landing_tol;
    } else {
      c["coland"] = nullptr;
    }
    body["coland"] = c;
  }
  emit(out, io::report("ray", body));
  return 0;
}

int cmd_lift(const Options& o, std::ostream& out) {
  const RationalMap f = load_map(o.map);
  PolyCurve curve;
  if (!o.curve_path.empty()) {
    try {
      curve = io::curve_from_json(read_json_file(o.curve_path, "--curve"));
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string("--curve: ") + e.what());
    }
  } else {
    const auto c = parse_numbers(o.circle_spec, "--circle", 3);
    if (!(c[2] > 0.0)) throw UsageError("--circle: radius must be positive");
    if (o.vertices < 3) throw UsageError("--vertices: need at least 3");
    curve = circle({c[0], c[1]}, c[2], o.vertices);
  }
  const Complex omega = parse_complex(o.omega, "--omega");
  if (!(o.eps > 0.0)) throw UsageError("--eps: must be positive");
  LiftOptions opts;
  opts.eps = o.eps;
  Json body = io::to_json(lift_curve(f, curve, omega, opts), omega);
  if (o.steps > 0) body["sign_sequence"] = io::to_json(sign_change_sequence(f, curve, omega, o.steps,
                                                                           farthest_from_reference, opts));
  emit(out, io::report("lift", body));
  return 0;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  Json body;
  if (!o.map.empty()) {
    body["name"] = o.map;
    body["map"] = io::to_json(load_map(o.map));
  } else if (o.rabbit_degree != 0) {
    if (o.rabbit_degree < 2) throw UsageError("--rabbit-roots: degree must be at least 2");
    Json roots = Json::array();
    for (Complex r : catalog::pseudo_rabbit_roots(o.rabbit_degree)) roots.push_back(io::to_json(r));
    body["degree"] = o.rabbit_degree;
    body["roots"] = roots;
  } else if (o.pinch) {
    const auto s = catalog::solve_pinch_params();
    body["a"] = io::to_json(s.a);
    body["b"] = io::to_json(s.b);
    body["denominator"] = io::to_json(s.denominator);
    body["first_derivative_at_zero"] = s.first_derivative_at_zero;
    body["second_derivative_at_zero"] = s.second_derivative_at_zero;
    body["return_residual"] = s.return_residual;
  } else {
    Json entries = Json::array();
    for (const auto& name : catalog::names()) {
      Json e;
      e["name"] = name;
      e["degree"] = catalog::lookup(name).degree();
      entries.push_back(e);
    }
    body["maps"] = entries;
  }
  emit(out, io::report("catalog", body));
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyConfig cfg;
  const auto groups = verify_groups();
  for (const auto& g : o.only) {
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) throw UsageError("--only: unknown group '" + g + "'");
  }
  cfg.only = o.only;
  if (!o.cubic_reference.empty()) {
    try {
      cfg.cubic_reference = io::map_from_json(read_json_file(o.cubic_reference, "--cubic-reference"));
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string("--cubic-reference: ") + e.what());
    }
  }
  const VerifyReport report = verify_suite(cfg);
  print_report(report, out);
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics for critically finite rational maps on the Riemann sphere"};
  app.require_subcommand(1);
  Options o;

  auto* render = app.add_subcommand("render", "Classify a grid by attracting cycle and write a PPM image");
  render->add_option("--map", o.map, "Catalog name or JSON map file")->required();
  render->add_option("--bounds", o.bounds, "xmin,xmax,ymin,ymax")->capture_default_str();
  render->add_option("--width", o.width, "Columns")->capture_default_str();
  render->add_option("--height", o.height, "Rows")->capture_default_str();
  render->add_option("--trap", o.trap, "Chordal trap radius")->capture_default_str();
  render->add_option("--max-iter", o.max_iter, "Iteration cap per cell")->capture_default_str();
  render->add_option("--out", o.out_path, "PPM output path")->required();
  render->add_option("--meta", o.meta_path, "JSON sidecar path (default: <out>.json)");

  auto* portrait = app.add_subcommand("portrait", "Critical points, their orbits and the postcritical set");
  portrait->add_option("--map", o.map, "Catalog name or JSON map file")->required();
  portrait->add_option("--tol", o.cycle_tol, "Chordal cycle detection tolerance")->capture_default_str();

  auto* periodic = app.add_subcommand("periodic", "Solutions of f^p(z) = z with multiplicities");
  periodic->add_option("--map", o.map, "Catalog name or JSON map file")->required();
  periodic->add_option("--period", o.period, "p")->capture_default_str();
  periodic->add_option("--degree-bound", o.degree_bound, "Largest d^p to expand")->capture_default_str();

  auto* ray = app.add_subcommand("ray", "Trace an external ray in a superattracting basin");
  ray->add_option("--map", o.map, "Catalog name or JSON map file")->required();
  ray->add_option("--angle", o.angle, "Angle as a reduced fraction a/b")->required();
  ray->add_option("--coland", o.coland_angle, "Second angle to compare landing points with");
  ray->add_option("--basin", o.basin, "Superattracting fixed point: inf or re,im")->capture_default_str();
  ray->add_option("--depth", o.depth, "Number of potential shells")->capture_default_str();
  ray->add_option("--r0", o.r0, "Starting potential")->capture_default_str();
  ray->add_option("--tol", o.landing_tol, "Landing tolerance")->capture_default_str();
  ray->add_flag("--orbit", o.orbit, "Also report every ray in the forward orbit of the angle");

  auto* lift = app.add_subcommand("lift", "Lift a closed curve and report degrees, signs and monodromy");
  lift->add_option("--map", o.map, "Catalog name or JSON map file")->required();
  auto* circ = lift->add_option("--circle", o.circle_spec, "cx,cy,r");
  auto* curve = lift->add_option("--curve", o.curve_path, "JSON file with [[re, im], ...]");
  circ->excludes(curve);
  lift->add_option("--vertices", o.vertices, "Vertices on a --circle curve")->capture_default_str();
  lift->add_option("--omega", o.omega, "Reference point re,im")->capture_default_str();
  lift->add_option("--eps", o.eps, "Minimum distance to critical values")->capture_default_str();
  lift->add_option("--steps", o.steps, "Length of the sign-change sequence (0 for none)")->capture_default_str();

  auto* cat = app.add_subcommand("catalog", "List catalog maps or print one of them");
  cat->add_option("--map", o.map, "Print this catalog map");
  cat->add_option("--rabbit-roots", o.rabbit_degree, "Parameters r of the degree-d pseudo-rabbit family");
  cat->add_flag("--pinch", o.pinch, "Solve for the cubic's denominator from its critical data");

  auto* verify = app.add_subcommand("verify", "Check the catalog maps against their known properties");
  verify->add_option("--only", o.only, "Restrict to groups: portrait periodic rays lifting catalog basins");
  verify->add_option("--cubic-reference", o.cubic_reference, "JSON map replacing the written-out cubic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*lift && o.circle_spec.empty() && o.curve_path.empty()) throw UsageError("lift: one of --circle or --curve is required");
    if (*render) return cmd_render(o, out);
    if (*portrait) return cmd_portrait(o, out);
    if (*periodic) return cmd_periodic(o, out);
    if (*ray) return cmd_ray(o, out);
    if (*lift) return cmd_lift(o, out);
    if (*cat) return cmd_catalog(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace fatou
