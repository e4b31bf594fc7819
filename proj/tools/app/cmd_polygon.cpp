#include <json.hpp>

#include <cmath>
#include <iostream>
#include <random>

#include "billiards/polyref/polygons.hpp"
#include "commands.hpp"

namespace billiards::app {

using nlohmann::json;

namespace {

struct SweepSetup {
  FramedPolygon billiard;
  std::size_t k = 0;  ///< expected period
  std::vector<Eigen::Vector2d> outline;
};

SweepSetup make_setup(const PolygonOptions& opt) {
  SweepSetup setup;
  if (opt.kind == "right-spherical") {
    Eigen::Vector2d A(0, 0), B(4, 0), C(1, 3);
    setup.billiard = right_spherical_triangle(A, B, C);
    setup.k = 3;
    setup.outline = {A, B, C};
  } else if (opt.kind == "cp-quadrilateral") {
    std::vector<HVecR> verts = {hpoint2(0, 0), hpoint2(3, 0), hpoint2(4, 2.5), hpoint2(-1, 2)};
    HVecR center = meet(join(verts[0], verts[2]), join(verts[1], verts[3]));
    setup.billiard = centrally_framed_polygon(center, verts);
    setup.k = 4;
  } else if (opt.kind == "cp-regular-2m") {
    if (opt.m < 2) throw input_error("--m must be at least 2");
    setup.billiard =
        centrally_framed_polygon(hpoint2(0, 0), regular_polygon_vertices(2 * static_cast<std::size_t>(opt.m)));
    setup.k = 2 * static_cast<std::size_t>(opt.m);
  } else if (opt.kind == "cp-odd-n") {
    if (opt.n < 3 || opt.n % 2 == 0) throw input_error("--n must be an odd number, at least 3");
    setup.billiard =
        centrally_framed_polygon(hpoint2(0, 0), regular_polygon_vertices(static_cast<std::size_t>(opt.n)));
    setup.k = 2 * static_cast<std::size_t>(opt.n);
  } else {
    throw input_error("unknown polygon kind '" + opt.kind +
                      "' (expected right-spherical, cp-quadrilateral, cp-regular-2m, or cp-odd-n)");
  }
  if (setup.outline.empty()) {
    for (const auto& v : setup.billiard.vertices) {
      HVecR q = normalized(v);
      setup.outline.emplace_back(q[0] / q[2], q[1] / q[2]);
    }
  }
  return setup;
}

HVecR edge_point(const FramedPolygon& billiard, std::size_t j, double t) {
  HVecR a = normalized(billiard.vertices[j % billiard.size()]);
  HVecR b = normalized(billiard.vertices[(j + 1) % billiard.size()]);
  return (1.0 - t) * a + t * b;
}

/// Worst relative deviation of the dual picture from its midpoint identity:
/// each dual edge point must be the midpoint of its two neighbouring dual
/// chord points.
double dual_midpoint_residual(const FramedPolygon& billiard, const VirtualOrbit& orbit) {
  DualOrbit dual = dual_orbit(billiard, orbit);
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < dual.chord_points.size() && k < dual.edge_points.size(); ++k) {
    Eigen::Vector2d mid = (dual.chord_points[k] + dual.chord_points[k + 1]) / 2;
    double scale = 1.0 + mid.norm();
    worst = std::max(worst, (dual.edge_points[k] - mid).norm() / scale);
  }
  return worst;
}

}  // namespace

int run_polygon(const PolygonOptions& opt, const AppConfig& cfg) {
  if (opt.samples < 1) throw input_error("--samples must be positive");
  SweepSetup setup = make_setup(opt);
  const std::size_t k = setup.k;
  const std::size_t steps = 2 * k + 2;
  const bool central = setup.billiard.center.has_value();
  const double bound = 1e-9, dual_bound = 1e-10;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> pick(0.05, 0.95);

  OutputSink sink(cfg.out_dir, cfg.formats);
  CsvBuilder csv({"sample", "t1", "t2", "period", "residual", "dual_residual"});

  int passes = 0, failures = 0, resamples = 0;
  double max_residual = 0.0, max_dual = 0.0;
  VirtualOrbit first_orbit;

  for (int sample = 0; sample < opt.samples; ++sample) {
    constexpr int budget = 64;
    bool recorded = false;
    for (int attempt = 0; attempt < budget && !recorded; ++attempt) {
      double t1 = pick(rng), t2 = pick(rng);
      VirtualOrbit orbit;
      try {
        orbit = virtual_orbit(setup.billiard, edge_point(setup.billiard, 0, t1),
                              edge_point(setup.billiard, 1, t2), steps, cfg.tol_closure);
      } catch (const degenerate_error&) {
        ++resamples;  // vertex/pivot hit: measure-zero start
        continue;
      }
      if (orbit.period && *orbit.period < k) {
        ++resamples;  // early closure: measure-zero start
        continue;
      }
      recorded = true;
      bool closed = orbit.period && *orbit.period == k && orbit.period_residual < bound;
      double dual_residual = 0.0;
      if (central) {
        dual_residual = dual_midpoint_residual(setup.billiard, orbit);
        max_dual = std::max(max_dual, dual_residual);
        if (dual_residual >= dual_bound) closed = false;
      }
      (closed ? passes : failures) += 1;
      max_residual = std::max(max_residual, orbit.period_residual);
      if (sample == 0) first_orbit = orbit;
      csv.row({std::to_string(sample), fmt17(t1), fmt17(t2),
               orbit.period ? std::to_string(*orbit.period) : "none", fmt17(orbit.period_residual),
               central ? fmt17(dual_residual) : ""});
    }
    if (!recorded) {
      ++failures;
      csv.row({std::to_string(sample), "", "", "exhausted", "", ""});
    }
  }

  sink.stage("polygon.csv", csv.str());

  SvgCanvas svg;
  svg.polyline(setup.outline, "black", 2.0, /*closed=*/true);
  if (!first_orbit.points.empty()) {
    std::vector<Eigen::Vector2d> trace;
    for (const auto& p : first_orbit.points) {
      HVecR q = normalized(p);
      if (std::abs(q[2]) < 1e-9) continue;  // skip points at infinity in the drawing
      trace.emplace_back(q[0] / q[2], q[1] / q[2]);
    }
    svg.polyline(trace, "steelblue", 1.0);
    for (const auto& q : trace) svg.dot(q, 2.5, "crimson");
  }
  sink.stage("polygon.svg", svg.render());

  json summary;
  summary["command"] = "polygon";
  summary["kind"] = opt.kind;
  summary["k"] = k;
  summary["samples"] = opt.samples;
  summary["passes"] = passes;
  summary["failures"] = failures;
  summary["resamples"] = resamples;
  summary["max_residual"] = max_residual;
  summary["max_dual_residual"] = central ? json(max_dual) : json(nullptr);
  summary["seed"] = cfg.seed;
  summary["outputs"] = sink.staged_names();
  if (sink.wants("json")) summary["outputs"].push_back("polygon.json");
  sink.stage("polygon.json", summary.dump(2) + "\n");
  sink.flush();

  std::cout << summary.dump(2) << "\n";
  return failures == 0 ? exit_ok : exit_violation;
}

}  // namespace billiards::app
