#include <json.hpp>

#include <cmath>
#include <iostream>

#include "billiards/caustics/tangency.hpp"
#include "billiards/reflect/orbit.hpp"
#include "commands.hpp"
#include "scene.hpp"

namespace billiards::app {

using nlohmann::json;

namespace {

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x[static_cast<Eigen::Index>(i)] = v[i];
  return x;
}

double azimuth(const Eigen::VectorXd& v) { return std::atan2(v[1], v[0]); }

std::vector<Eigen::Vector2d> ellipse_outline(double a, double b) {
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i <= 256; ++i) {
    double t = 2 * M_PI * i / 256.0;
    pts.emplace_back(std::sqrt(a) * std::cos(t), std::sqrt(b) * std::sin(t));
  }
  return pts;
}

}  // namespace

int run_orbit(const OrbitOptions& opt, const AppConfig& cfg) {
  LoadedScene scene = load_scene(opt.scene_path);
  const Boundary& table = *scene.boundary;

  if (opt.steps < 1) throw input_error("--steps must be at least 1");

  Eigen::VectorXd p1;
  if (opt.has_theta) {
    const auto* quadric = dynamic_cast<const QuadricBoundary*>(&table);
    if (quadric == nullptr) throw input_error("--theta starts require an ellipse or quadric scene");
    if (scene.dim == 2) {
      if (opt.has_phi) throw input_error("--phi applies to 3-dimensional scenes only");
      p1 = quadric->point_at(opt.theta);
    } else if (scene.dim == 3) {
      p1 = quadric->point_at(opt.theta, opt.phi);
    } else {
      throw input_error("--theta starts support 2- and 3-dimensional quadrics only");
    }
  } else {
    if (opt.start.empty()) throw input_error("one of --start or --theta is required");
    std::vector<double> coords = parse_double_list(opt.start);
    if (static_cast<int>(coords.size()) != scene.dim)
      throw input_error("--start needs " + std::to_string(scene.dim) + " coordinates for this scene");
    p1 = to_vector(coords);
    if (!table.contains(p1, std::max(cfg.tol_geometry, 1e-12)))
      throw input_error("start point is not on the boundary (within the geometry tolerance)");
  }

  if (opt.dir.empty()) throw input_error("--dir is required");
  std::vector<double> dir_coords = parse_double_list(opt.dir);
  if (static_cast<int>(dir_coords.size()) != scene.dim)
    throw input_error("--dir needs " + std::to_string(scene.dim) + " coordinates for this scene");
  Eigen::VectorXd dir = to_vector(dir_coords);
  if (dir.norm() == 0) throw input_error("--dir must be nonzero");

  Eigen::VectorXd p2;
  try {
    p2 = table.next_intersection(p1, dir);
  } catch (const billiards::error& e) {
    throw input_error(std::string("the seed chord leaves the boundary: ") + e.what());
  }

  Orbit orbit = iterate_orbit(table, p1, p2, static_cast<std::size_t>(opt.steps), cfg.tol_closure);

  const bool with_invariant = scene.kind == LoadedScene::Kind::ellipse && scene.euclidean_frames;
  double invariant0 = 0.0, invariant_drift = 0.0;
  std::vector<double> invariant;
  if (with_invariant) {
    double a = scene.semiaxes_sq[0], b = scene.semiaxes_sq[1];
    for (const auto& vertex : orbit.vertices) {
      double value = a * b *
                     joachimsthal_invariant(Eigen::Vector2d(vertex.point), Eigen::Vector2d(vertex.outgoing),
                                            a, b, std::max(cfg.tol_geometry, 1e-8));
      invariant.push_back(value);
    }
    invariant0 = invariant.front();
    for (double v : invariant) invariant_drift = std::max(invariant_drift, std::abs(v - invariant0));
  }

  OutputSink sink(cfg.out_dir, cfg.formats);

  std::vector<std::string> header = {"step", "x", "y"};
  if (scene.dim == 3) header.emplace_back("z");
  header.insert(header.end(), {"incoming-azimuth", "outgoing-azimuth", "residual"});
  if (with_invariant) header.emplace_back("joachimsthal");
  CsvBuilder csv(header);
  double max_harmonic = 0.0;
  for (std::size_t k = 0; k < orbit.vertices.size(); ++k) {
    const auto& vertex = orbit.vertices[k];
    max_harmonic = std::max(max_harmonic, vertex.harmonic_residual);
    std::vector<std::string> cells = {std::to_string(k), fmt17(vertex.point[0]), fmt17(vertex.point[1])};
    if (scene.dim == 3) cells.push_back(fmt17(vertex.point[2]));
    cells.push_back(fmt17(azimuth(vertex.incoming)));
    cells.push_back(fmt17(azimuth(vertex.outgoing)));
    cells.push_back(fmt17(vertex.harmonic_residual));
    if (with_invariant) cells.push_back(fmt17(invariant[k]));
    csv.row(cells);
  }
  sink.stage("orbit.csv", csv.str());

  SvgCanvas svg;
  if (scene.kind == LoadedScene::Kind::polygon) {
    svg.polyline(scene.vertices, "black", 2.0, /*closed=*/true);
  } else if (scene.dim == 2) {
    svg.axis_ellipse({0, 0}, std::sqrt(scene.semiaxes_sq[0]), std::sqrt(scene.semiaxes_sq[1]),
                     "black", 2.0);
  } else {
    svg.polyline(ellipse_outline(scene.semiaxes_sq[0], scene.semiaxes_sq[1]), "gray", 1.0);
  }
  std::vector<Eigen::Vector2d> trace;
  trace.reserve(orbit.vertices.size());
  for (const auto& vertex : orbit.vertices) trace.emplace_back(vertex.point[0], vertex.point[1]);
  svg.polyline(trace, "steelblue", 1.0);
  for (const auto& q : trace) svg.dot(q, 2.5, "crimson");
  sink.stage("orbit.svg", svg.render());

  json summary;
  summary["command"] = "orbit";
  summary["scene"] = opt.scene_path;
  summary["steps"] = opt.steps;
  summary["vertices"] = orbit.vertices.size();
  summary["periodic"] = orbit.periodic;
  summary["period"] = orbit.periodic ? json(orbit.period) : json(nullptr);
  summary["closure_residual"] =
      std::isfinite(orbit.closure_residual) ? json(orbit.closure_residual) : json(nullptr);
  summary["max_harmonic_residual"] = max_harmonic;
  summary["joachimsthal"] =
      with_invariant ? json{{"value", invariant0}, {"drift", invariant_drift}} : json(nullptr);
  summary["outputs"] = sink.staged_names();
  if (sink.wants("json")) summary["outputs"].push_back("orbit.json");
  sink.stage("orbit.json", summary.dump(2) + "\n");
  sink.flush();

  std::cout << summary.dump(2) << "\n";
  return exit_ok;
}

}  // namespace billiards::app
