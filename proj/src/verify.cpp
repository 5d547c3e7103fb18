#include "fatou/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>

#include "fatou/basins.hpp"
#include "fatou/catalog.hpp"
#include "fatou/error.hpp"
#include "fatou/lifting.hpp"
#include "fatou/orbits.hpp"
#include "fatou/rays.hpp"

namespace fatou {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string pt(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.10g,%.10g)", z.real(), z.imag());
  return buf;
}

struct Recorder {
  VerifyReport& report;
  std::string group;

  void add(const std::string& name, bool passed, std::string measured, std::string tolerance) {
    report.checks.push_back({group, name, passed, std::move(measured), std::move(tolerance)});
  }

  // Runs a check body that records its own results; an exception becomes a
  // failed entry named after the check.
  void guard(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, std::string("error: ") + e.what(), "-");
    }
  }
};

// Distance from a sphere point to the nearest point in a list.
double nearest(const SpherePoint& p, const std::vector<SpherePoint>& set) {
  double best = 1e300;
  for (const auto& q : set) best = std::min(best, chordal(p, q));
  return best;
}

double nearest_finite(Complex p, const std::vector<SpherePoint>& set) {
  double best = 1e300;
  for (const auto& q : set) {
    if (!q.is_infinite()) best = std::min(best, std::abs(q.finite_value() - p));
  }
  return best;
}

void portrait_checks(Recorder& r) {
  const RationalMap g = catalog::displayed_cubic();
  r.guard("critical-points", [&] {
    const auto cps = critical_points(g);
    const std::vector<std::pair<SpherePoint, int>> want{{SpherePoint(0.0), 3}, {SpherePoint(1.0), 2},
                                                        {SpherePoint::infinity(), 2}};
    double worst = 0.0;
    bool degrees = cps.size() == want.size();
    for (const auto& [p, d] : want) {
      const auto it = std::min_element(cps.begin(), cps.end(), [&](const auto& a, const auto& b) {
        return chordal(a.location, p) < chordal(b.location, p);
      });
      if (it == cps.end()) {
        degrees = false;
        continue;
      }
      worst = std::max(worst, chordal(it->location, p));
      degrees = degrees && it->local_degree == d;
    }
    r.add("critical-points", degrees && worst < 1e-9, "count=" + std::to_string(cps.size()) + " dist=" + num(worst),
          "{0:3,1:2,inf:2} within 1e-9");
  });
  r.guard("orbit-of-1", [&] {
    const std::vector<Complex> want{1.0, 0.0, -2.0, 0.0};
    SpherePoint x(1.0);
    double worst = 0.0;
    for (Complex w : want) {
      worst = std::max(worst, std::abs(x.finite_value() - w));
      x = g(x);
    }
    r.add("orbit-of-1", worst < 1e-9, "dist=" + num(worst), "1->0->-2->0 within 1e-9");
  });
  r.guard("postcritical-set", [&] {
    const auto p = critical_portrait(g);
    const std::vector<SpherePoint> want{SpherePoint::infinity(), SpherePoint(0.0), SpherePoint(-2.0)};
    double worst = 0.0;
    for (const auto& w : want) worst = std::max(worst, nearest(w, p.postcritical_set));
    for (const auto& q : p.postcritical_set) worst = std::max(worst, nearest(q, want));
    r.add("postcritical-set", worst < 1e-9, "size=" + std::to_string(p.postcritical_set.size()) + " dist=" + num(worst),
          "{inf,0,-2} within 1e-9");
    const bool flags = p.is_critically_finite == Tristate::yes && p.is_hyperbolic == Tristate::yes &&
                       p.all_postcritical_periodic == Tristate::yes;
    r.add("flags", flags,
          std::string(to_string(p.is_critically_finite)) + "/" + std::string(to_string(p.is_hyperbolic)) + "/" +
              std::string(to_string(p.all_postcritical_periodic)),
          "true/true/true");
  });
}

void periodic_checks(Recorder& r) {
  const RationalMap g = catalog::displayed_cubic();
  r.guard("period-2-points", [&] {
    const auto pts = periodic_points(g, 2);
    int total = 0, at_inf = 0;
    double max_im = 0.0;
    std::vector<SpherePoint> locs;
    for (const auto& p : pts) {
      total += p.multiplicity;
      locs.push_back(p.point);
      if (p.point.is_infinite()) {
        at_inf += p.multiplicity;
      } else {
        max_im = std::max(max_im, std::abs(p.point.finite_value().imag()));
      }
    }
    r.add("count", total == 10 && at_inf == 1, "total=" + std::to_string(total) + " at_inf=" + std::to_string(at_inf),
          "10 with 1 at inf");
    r.add("all-real", max_im < 1e-8, "max|Im|=" + num(max_im), "< 1e-8");
    double worst = 0.0;
    for (Complex w : {Complex(0.0), Complex(-2.0), Complex(2.0)}) worst = std::max(worst, nearest_finite(w, locs));
    r.add("contains-0-minus2-2", worst < 1e-9, "dist=" + num(worst), "< 1e-9");
  });
}

void ray_checks(Recorder& r) {
  const RationalMap g = catalog::displayed_cubic();
  const SpherePoint inf = SpherePoint::infinity();
  r.guard("ray-0-lands-at-2", [&] {
    const RayTrace t = trace_ray(g, inf, RayAngle(0, 1));
    const double d = std::abs(t.landing - 2.0);
    r.add("ray-0-lands-at-2", t.landed && d < 1e-6, "landing=" + pt(t.landing) + " dist=" + num(d), "< 1e-6");
  });
  r.guard("rays-1/3-2/3", [&] {
    // The orbits 1/6 -> 1/3 -> 2/3 and 5/6 -> 2/3 -> 1/3 cover every ray needed.
    const auto a = trace_ray_orbit(g, inf, RayAngle(1, 6));
    const auto b = trace_ray_orbit(g, inf, RayAngle(5, 6));
    const RayTrace& r16 = a[0];
    const RayTrace& r13 = a[1];
    const RayTrace& r23 = a[2];
    const RayTrace& r56 = b[0];
    const bool landed = r16.landed && r13.landed && r23.landed && r56.landed;
    const double gap = std::abs(r13.landing - r23.landing);
    const Complex p = r13.landing;
    const double fixed = std::abs(g(p) - p);
    r.add("coland-1/3-2/3", landed && gap < 1e-6, "gap=" + num(gap), "< 1e-6");
    r.add("common-landing-fixed", landed && fixed < 1e-6, "p=" + pt(p) + " |g(p)-p|=" + num(fixed), "< 1e-6");
    const double gap2 = std::abs(r16.landing - r56.landing);
    r.add("distinct-1/6-5/6", landed && gap2 > 1e-2, "gap=" + num(gap2), "> 1e-2");

    const std::vector<Complex> pre{p, r16.landing, r56.landing};
    double sep = 1e300, img = 0.0;
    for (size_t i = 0; i < pre.size(); ++i) {
      img = std::max(img, std::abs(g(pre[i]) - p));
      for (size_t j = i + 1; j < pre.size(); ++j) sep = std::min(sep, std::abs(pre[i] - pre[j]));
    }
    r.add("three-boundary-preimages", sep > 1e-3 && img < 1e-6, "min_sep=" + num(sep) + " max|g(x)-p|=" + num(img),
          "sep > 1e-3, image < 1e-6");
    double func = 0.0;
    func = std::max(func, functoriality_residual(g, a[0], a[1]));
    func = std::max(func, functoriality_residual(g, a[1], a[2]));
    func = std::max(func, functoriality_residual(g, a[2], a[1]));
    func = std::max(func, functoriality_residual(g, b[0], b[1]));
    r.add("functoriality", func < 1e-6, "residual=" + num(func), "< 1e-6");
  });
  r.guard("separation-0-minus2", [&] {
    const bool s = separation_test(g, inf, RayAngle(1, 3), RayAngle(2, 3), 0.0, -2.0);
    r.add("separation-0-minus2", s, s ? "separated" : "not separated", "separated");
  });
}

void lifting_checks(Recorder& r) {
  const RationalMap g = catalog::displayed_cubic();
  const Complex omega = 1e6;
  r.guard("lift-around-minus2", [&] {
    const LiftSet s = lift_curve(g, circle(-2.0, 0.1), omega);
    const bool ok = s.lifts.size() == 1 && s.lifts[0].degree == 3 && winding_number(s.lifts[0].curve, 0.0) != 0;
    r.add("lift-around-minus2", ok,
          "lifts=" + std::to_string(s.lifts.size()) + " degree=" + std::to_string(s.lifts.empty() ? 0 : s.lifts[0].degree),
          "one lift of degree 3 around 0");
  });
  r.guard("lift-around-0", [&] {
    const LiftSet s = lift_curve(g, circle(0.0, 0.1), omega);
    bool ok = s.lifts.size() == 2;
    std::string measured = "lifts=" + std::to_string(s.lifts.size());
    for (const auto& l : s.lifts) {
      measured += " deg" + std::to_string(l.degree);
      const Complex inside = l.degree == 1 ? Complex(-2.0) : Complex(1.0);
      ok = ok && (l.degree == 1 || l.degree == 2) && winding_number(l.curve, inside) != 0;
    }
    ok = ok && s.lifts[0].degree + s.lifts[1].degree == 3;
    r.add("lift-around-0", ok, measured, "degree 1 around -2 and degree 2 around 1");
  });
  r.guard("no-sign-change-fixed-basin", [&] {
    const SignSequence seq = sign_change_sequence(g, circle(-2.0, 0.1), omega, 3);
    r.add("no-sign-change-fixed-basin", seq.changes() == 0, "changes=" + std::to_string(seq.changes()), "0");
  });
  r.guard("negative-lift-moving-basin", [&] {
    const SignSequence seq = sign_change_sequence(g, circle(-2.0, 0.1), 0.0, 1);
    const bool ok = seq.steps.size() == 2 && seq.steps[1].sign == -1;
    r.add("negative-lift-moving-basin", ok, "step1 sign=" + std::to_string(seq.steps.back().sign), "-1");
  });
}

std::vector<Complex> probe_points() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Complex> out;
  for (int i = 0; i < 20; ++i) out.emplace_back(u(rng), u(rng));
  return out;
}

void catalog_checks(Recorder& r, const VerifyConfig& cfg) {
  const auto probes = probe_points();
  r.guard("cubic-identity", [&] {
    const RationalMap ref = cfg.cubic_reference.value_or(catalog::displayed_cubic());
    const double res = map_identity_residual(catalog::pseudo_basilica(3), ref, probes);
    r.add("cubic-identity", res < 1e-9, "rel_err=" + num(res), "< 1e-9");
  });
  r.guard("quartic-identity", [&] {
    const RationalMap ref = cfg.quartic_reference.value_or(catalog::displayed_quartic());
    const double res = map_identity_residual(catalog::pseudo_basilica(4), ref, probes);
    r.add("quartic-identity", res < 1e-9, "rel_err=" + num(res), "< 1e-9");
  });
  r.guard("rabbit-parameter", [&] {
    const Complex want(1.34781, 1.02885);
    double best = 1e300;
    for (Complex z : catalog::pseudo_rabbit_roots(3)) best = std::min(best, std::abs(z - want));
    r.add("rabbit-parameter", best < 1e-3, "dist=" + num(best), "< 1e-3");
  });
  r.guard("pinch-parameters", [&] {
    const auto s = catalog::solve_pinch_params();
    const Complex ratio = s.denominator[0] / s.denominator[1];
    const double prop = std::abs(ratio - Complex(-1.0 / 1.5));
    const bool ok = prop < 1e-12 && s.first_derivative_at_zero < 1e-9 && s.second_derivative_at_zero < 1e-9 &&
                    s.return_residual < 1e-9;
    r.add("pinch-parameters", ok,
          "a=" + pt(s.a) + " b=" + pt(s.b) + " |g'(0)|=" + num(s.first_derivative_at_zero) +
              " |g''(0)|=" + num(s.second_derivative_at_zero) + " |g(g(0))|=" + num(s.return_residual),
          "denominator ~ 1.5z-1, residuals < 1e-9");
  });
}

void basin_checks(Recorder& r) {
  const RationalMap g = catalog::displayed_cubic();
  r.guard("basins", [&] {
    const CriticalPortrait portrait = critical_portrait(g);
    const BasinGrid grid = classify_grid(g, portrait, {-3.0, 3.0, -3.0, 3.0}, 400, 400);
    const ComponentLabeling labels = label_components(grid);
    const int l0 = component_of(labels, 0.0);
    const int l2 = component_of(labels, -2.0);
    r.add("distinct-components", l0 != l2, "labels " + std::to_string(l0) + "," + std::to_string(l2), "distinct");

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> cell(0, 399);
    int tried = 0, good = 0;
    while (tried < 2000) {
      const int col = cell(rng), row = cell(rng);
      const CellRecord& c = grid.at(col, row);
      if (!c.resolved()) continue;
      ++tried;
      const CellRecord img = classify_point(g, grid.cycles, g(SpherePoint(grid.cell_center(col, row))), grid.options);
      const int period = static_cast<int>(grid.cycles[static_cast<size_t>(c.cycle_id)].size());
      good += img.cycle_id == c.cycle_id && img.phase == (c.phase + 1) % period;
    }
    const double frac = static_cast<double>(good) / tried;
    r.add("phase-coherence", frac >= 0.95, "fraction=" + num(frac), ">= 0.95");

    int inf_id = -1;
    for (size_t k = 0; k < grid.cycles.size(); ++k) {
      if (grid.cycles[k].size() == 1 && grid.cycles[k][0].is_infinite()) inf_id = static_cast<int>(k);
    }
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int found = 0, kept = 0, draws = 0;
    while (found < 200 && draws < 100000) {
      ++draws;
      const SpherePoint z(Complex(u(rng), u(rng)));
      if (classify_point(g, grid.cycles, z, grid.options).cycle_id != inf_id) continue;
      ++found;
      kept += classify_point(g, grid.cycles, g(z), grid.options).cycle_id == inf_id;
    }
    r.add("infinity-basin-invariant", found == 200 && kept == found,
          std::to_string(kept) + "/" + std::to_string(found), "200/200");
  });
}

}  // namespace

bool VerifyReport::all_passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::vector<std::string> verify_groups() { return {"portrait", "periodic", "rays", "lifting", "catalog", "basins"}; }

VerifyReport verify_suite(const VerifyConfig& config) {
  const auto groups = verify_groups();
  for (const auto& g : config.only) {
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) {
      throw InvalidArgument("unknown verify group '" + g + "'");
    }
  }
  auto selected = [&](const std::string& g) {
    return config.only.empty() || std::find(config.only.begin(), config.only.end(), g) != config.only.end();
  };
  VerifyReport report;
  auto run = [&](const std::string& group, const std::function<void(Recorder&)>& body) {
    if (!selected(group)) return;
    Recorder rec{report, group};
    body(rec);
  };
  run("portrait", portrait_checks);
  run("periodic", periodic_checks);
  run("rays", ray_checks);
  run("lifting", lifting_checks);
  run("catalog", [&](Recorder& r) { catalog_checks(r, config); });
  run("basins", basin_checks);
  return report;
}

void print_report(const VerifyReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.group << "/" << c.name << " measured=" << c.measured
        << " tolerance=" << c.tolerance << "\n";
  }
  const auto passed = std::count_if(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.passed; });
  out << passed << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace fatou
