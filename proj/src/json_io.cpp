#include "fatou/json_io.hpp"

#include <algorithm>

#include "fatou/error.hpp"

namespace fatou::io {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const SpherePoint& p) {
  if (p.is_infinite()) return "inf";
  return to_json(p.finite_value());
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (Complex c : p.coefficients()) out.push_back(to_json(c));
  return out;
}

Json to_json(const RationalMap& f) {
  Json out;
  out["degree"] = f.degree();
  out["numerator"] = to_json(f.num());
  out["denominator"] = to_json(f.den());
  return out;
}

namespace {

Json points(const std::vector<SpherePoint>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

Json cycle_report(const CycleReport& r) {
  Json out;
  out["start"] = to_json(r.start);
  out["resolved"] = r.resolved;
  if (r.resolved) {
    out["preperiod"] = r.preperiod;
    out["period"] = r.period;
    out["orbit"] = points(r.orbit);
    out["cycle"] = points(r.cycle);
    out["multiplier"] = to_json(r.multiplier);
    out["class"] = std::string(to_string(r.cycle_class));
    out["lands_exactly"] = r.lands_exactly;
  } else {
    out["orbit_length"] = r.orbit.size();
  }
  return out;
}

}  // namespace

Json to_json(const CriticalPortrait& portrait) {
  Json out;
  Json cps = Json::array();
  for (const auto& c : portrait.critical_points) {
    Json e;
    e["point"] = to_json(c.location);
    e["local_degree"] = c.local_degree;
    cps.push_back(e);
  }
  out["critical_points"] = cps;
  Json orbits = Json::array();
  for (const auto& r : portrait.orbits) orbits.push_back(cycle_report(r));
  out["orbits"] = orbits;
  out["postcritical_set"] = points(portrait.postcritical_set);
  out["q_set"] = points(portrait.q_set);
  out["critically_finite"] = std::string(to_string(portrait.is_critically_finite));
  out["hyperbolic"] = std::string(to_string(portrait.is_hyperbolic));
  out["all_postcritical_periodic"] = std::string(to_string(portrait.all_postcritical_periodic));
  return out;
}

Json to_json(const std::vector<PeriodicPoint>& pts) {
  Json list = Json::array();
  int total = 0;
  for (const auto& p : pts) {
    Json e;
    e["point"] = to_json(p.point);
    e["multiplicity"] = p.multiplicity;
    e["minimal_period"] = p.minimal_period;
    list.push_back(e);
    total += p.multiplicity;
  }
  Json out;
  out["count"] = total;
  out["points"] = list;
  return out;
}

Json to_json(const RayTrace& ray) {
  Json out;
  out["angle"] = ray.angle.to_string();
  Json samples = Json::array();
  for (Complex z : ray.samples) samples.push_back(to_json(z));
  out["samples"] = samples;
  out["landing"] = ray.landed ? to_json(ray.landing) : Json(nullptr);
  out["landed"] = ray.landed;
  out["residual"] = ray.residual;
  return out;
}

Json to_json(const PolyCurve& c) {
  Json out = Json::array();
  for (Complex z : c.vertices) out.push_back(to_json(z));
  return out;
}

Json to_json(const LiftSet& set, Complex omega) {
  Json out;
  out["omega"] = to_json(omega);
  out["base"] = to_json(set.base);
  Json lifts = Json::array();
  int total = 0;
  const auto outer = outermost_lifts(set, omega);
  for (size_t i = 0; i < set.lifts.size(); ++i) {
    const Lift& l = set.lifts[i];
    Json e;
    e["degree"] = l.degree;
    e["sign"] = l.sign;
    e["outermost"] = std::find(outer.begin(), outer.end(), i) != outer.end();
    e["curve"] = to_json(l.curve);
    lifts.push_back(e);
    total += l.degree;
  }
  out["degree_sum"] = total;
  out["lifts"] = lifts;
  out["monodromy"] = set.monodromy;
  return out;
}

Json to_json(const SignSequence& seq) {
  Json steps = Json::array();
  for (const auto& s : seq.steps) {
    Json e;
    e["sign"] = s.sign;
    e["degree"] = s.degree;
    e["outermost"] = s.outermost;
    e["sign_change"] = s.sign_change;
    e["vertex_count"] = s.curve.vertices.size();
    steps.push_back(e);
  }
  Json out;
  out["sign_changes"] = seq.changes();
  out["steps"] = steps;
  return out;
}

Json grid_metadata(const BasinGrid& grid, const ComponentLabeling& labels) {
  Json out;
  out["bounds"] = Json::array({grid.bounds.xmin, grid.bounds.xmax, grid.bounds.ymin, grid.bounds.ymax});
  out["width"] = grid.width;
  out["height"] = grid.height;
  out["trap_radius"] = grid.options.trap_radius;
  out["max_iterations"] = grid.options.max_iterations;
  Json cycles = Json::array();
  for (const auto& c : grid.cycles) cycles.push_back(points(c));
  out["cycles"] = cycles;
  long unresolved = 0;
  for (const auto& c : grid.cells) unresolved += c.resolved() ? 0 : 1;
  out["unresolved_cells"] = unresolved;
  Json comps = Json::array();
  for (const auto& c : labels.components) {
    Json e;
    e["label"] = c.label;
    e["cycle_id"] = c.cycle_id;
    e["phase"] = c.phase;
    e["representative"] = to_json(c.representative);
    e["pixels"] = c.pixel_count;
    comps.push_back(e);
  }
  out["components"] = comps;
  return out;
}

Json report(const std::string& kind, const Json& body) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["kind"] = kind;
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InvalidArgument("expected a number or an [re, im] pair, got " + j.dump());
}

namespace {

Polynomial poly_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw InvalidArgument(std::string("map field '") + field + "' must be an array");
  std::vector<Complex> c;
  for (const auto& e : j) c.push_back(complex_from_json(e));
  return Polynomial(std::move(c));
}

}  // namespace

RationalMap map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("numerator") || !j.contains("denominator")) {
    throw InvalidArgument("map JSON needs 'numerator' and 'denominator' coefficient arrays");
  }
  return normalize(poly_from_json(j["numerator"], "numerator"), poly_from_json(j["denominator"], "denominator"));
}

PolyCurve curve_from_json(const Json& j) {
  const Json& arr = j.is_object() && j.contains("vertices") ? j["vertices"] : j;
  if (!arr.is_array()) throw InvalidArgument("curve JSON must be an array of [re, im] pairs");
  PolyCurve c;
  for (const auto& e : arr) c.vertices.push_back(complex_from_json(e));
  if (c.vertices.size() < 3) throw InvalidArgument("curve needs at least 3 vertices");
  return c;
}

}  // namespace fatou::io
