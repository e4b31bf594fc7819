#include "scene.hpp"

#include <json.hpp>

#include <fstream>

#include "billiards/projcore/quadric.hpp"

namespace billiards::app {

using nlohmann::json;

namespace {

/// Split "name" or "name(arg,arg,...)" into its pieces.
struct FrameSpec {
  std::string name;
  std::vector<double> args;
};

FrameSpec split_frame(const std::string& text) {
  FrameSpec spec;
  auto open = text.find('(');
  if (open == std::string::npos) {
    spec.name = text;
    return spec;
  }
  if (text.back() != ')') throw input_error("frame '" + text + "' is missing ')'");
  spec.name = text.substr(0, open);
  std::string args = text.substr(open + 1, text.size() - open - 2);
  if (!args.empty()) spec.args = parse_double_list(args);
  return spec;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x[static_cast<Eigen::Index>(i)] = v[i];
  return x;
}

std::vector<double> positive_list(const json& node, const char* what) {
  if (!node.is_array() || node.empty()) throw input_error(std::string(what) + " must be a non-empty array");
  std::vector<double> out;
  for (const auto& v : node) {
    if (!v.is_number()) throw input_error(std::string(what) + " entries must be numbers");
    double x = v.get<double>();
    if (x <= 0) throw input_error(std::string(what) + " entries must be positive");
    out.push_back(x);
  }
  return out;
}

Eigen::Vector2d point2(const json& node, const char* what) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number())
    throw input_error(std::string(what) + " must be a [x, y] pair");
  return {node[0].get<double>(), node[1].get<double>()};
}

}  // namespace

FrameRule parse_frame_rule(const std::string& text, int dim, bool* is_euclidean) {
  FrameSpec spec = split_frame(text);
  if (is_euclidean != nullptr) *is_euclidean = spec.name == "euclidean";
  if (spec.name == "euclidean") {
    if (!spec.args.empty()) throw input_error("frame 'euclidean' takes no arguments");
    return euclidean_frame();
  }
  if (spec.name == "pseudo") {
    if (spec.args.size() != 2) throw input_error("frame 'pseudo' needs (k,l) signature counts");
    int k = static_cast<int>(spec.args[0]), l = static_cast<int>(spec.args[1]);
    if (k < 0 || l < 0 || k + l != dim)
      throw input_error("frame 'pseudo(k,l)' needs k + l = " + std::to_string(dim));
    std::vector<double> diag(static_cast<std::size_t>(dim), -1.0);
    for (int j = 0; j < k; ++j) diag[static_cast<std::size_t>(j)] = 1.0;
    return pseudo_euclidean_frame(diag);
  }
  if (spec.name == "central" || spec.name == "vertex") {
    if (static_cast<int>(spec.args.size()) != dim)
      throw input_error("frame '" + spec.name + "' needs a " + std::to_string(dim) + "-coordinate point");
    return spec.name == "central" ? central_frame(to_vector(spec.args)) : vertex_frame(to_vector(spec.args));
  }
  if (spec.name == "quadric") {
    if (dim != 2 || spec.args.size() != 2 || spec.args[0] == 0 || spec.args[1] == 0)
      throw input_error("frame 'quadric(a,b)' needs two nonzero squared semi-axes (planar scenes)");
    return quadric_induced_frame(axis_conic<double>(spec.args[0], spec.args[1]));
  }
  throw input_error("unknown frame '" + text + "'");
}

LoadedScene load_scene(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open scene file " + path);

  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw input_error("scene " + path + ": " + e.what());
  }

  if (!doc.is_object() || !doc.contains("boundaries") || !doc["boundaries"].is_array() ||
      doc["boundaries"].empty())
    throw input_error("scene " + path + ": expected an object with a non-empty \"boundaries\" array");

  const json& bs = doc["boundaries"];
  std::string kind0 = bs[0].value("kind", "");

  LoadedScene scene;
  if (kind0 == "ellipse" || kind0 == "quadric") {
    if (bs.size() != 1)
      throw input_error("scene " + path + ": '" + kind0 + "' scenes take exactly one boundary entry");
    const json& b = bs[0];
    if (!b.contains("params")) throw input_error("scene " + path + ": boundary needs \"params\"");
    std::vector<double> axes;
    if (kind0 == "ellipse") {
      const json& p = b["params"];
      if (!p.is_object() || !p.contains("a") || !p.contains("b"))
        throw input_error("scene " + path + ": ellipse params need squared semi-axes \"a\" and \"b\"");
      axes = {p["a"].get<double>(), p["b"].get<double>()};
      if (axes[0] <= 0 || axes[1] <= 0) throw input_error("scene " + path + ": semi-axes must be positive");
      scene.kind = LoadedScene::Kind::ellipse;
    } else {
      const json& p = b["params"];
      if (!p.is_object() || !p.contains("axes"))
        throw input_error("scene " + path + ": quadric params need an \"axes\" array of squared semi-axes");
      axes = positive_list(p["axes"], "quadric axes");
      if (axes.size() < 2) throw input_error("scene " + path + ": quadric needs at least two axes");
      scene.kind = axes.size() == 2 ? LoadedScene::Kind::ellipse : LoadedScene::Kind::quadric;
    }
    scene.dim = static_cast<int>(axes.size());
    bool euclid = true;
    FrameRule rule = parse_frame_rule(b.value("frame", "euclidean"), scene.dim, &euclid);
    scene.euclidean_frames = euclid;
    scene.semiaxes_sq = axes;
    scene.boundary = std::make_unique<QuadricBoundary>(axes, rule);
    return scene;
  }

  if (kind0 == "polygon-edge") {
    std::vector<Eigen::Vector2d> verts;
    std::vector<FrameRule> rules;
    bool euclid = true;
    Eigen::Vector2d expected_from = Eigen::Vector2d::Zero();
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const json& b = bs[j];
      if (b.value("kind", "") != "polygon-edge")
        throw input_error("scene " + path + ": boundary kinds cannot be mixed");
      if (!b.contains("params") || !b["params"].is_object())
        throw input_error("scene " + path + ": polygon-edge needs params {from, to}");
      Eigen::Vector2d from = point2(b["params"]["from"], "polygon-edge 'from'");
      Eigen::Vector2d to = point2(b["params"]["to"], "polygon-edge 'to'");
      if (j > 0 && (from - expected_from).norm() > 1e-12)
        throw input_error("scene " + path + ": edge " + std::to_string(j) +
                          " does not start where the previous edge ended");
      expected_from = to;
      verts.push_back(from);
      bool edge_euclid = true;
      rules.push_back(parse_frame_rule(b.value("frame", "euclidean"), 2, &edge_euclid));
      euclid = euclid && edge_euclid;
    }
    if (verts.size() < 3) throw input_error("scene " + path + ": a polygon needs at least 3 edges");
    if ((expected_from - verts.front()).norm() > 1e-12)
      throw input_error("scene " + path + ": the last edge does not close the polygon");
    scene.kind = LoadedScene::Kind::polygon;
    scene.dim = 2;
    scene.euclidean_frames = euclid;
    scene.vertices = verts;
    scene.boundary = std::make_unique<PolygonBoundary>(std::move(verts), std::move(rules));
    return scene;
  }

  throw input_error("scene " + path + ": unknown boundary kind '" + kind0 +
                    "' (expected ellipse, quadric, or polygon-edge)");
}

}  // namespace billiards::app
