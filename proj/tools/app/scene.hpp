#pragma once

#include <memory>
#include <string>
#include <vector>

#include "billiards/reflect/boundary.hpp"
#include "common.hpp"

namespace billiards::app {

/// A billiard table loaded from a scene file, together with the metadata the
/// orbit command needs for reports and drawings.
struct LoadedScene {
  enum class Kind { ellipse, quadric, polygon };

  std::unique_ptr<Boundary> boundary;
  Kind kind = Kind::ellipse;
  int dim = 2;
  bool euclidean_frames = true;           ///< every boundary entry used frame "euclidean"
  std::vector<double> semiaxes_sq;        ///< ellipse/quadric kinds
  std::vector<Eigen::Vector2d> vertices;  ///< polygon kind
};

/// Parse and build a scene. Malformed JSON surfaces as input_error carrying
/// the parser's line/column diagnostic; structural problems (unknown kinds,
/// broken edge chains, bad frames) also map to input_error.
LoadedScene load_scene(const std::string& path);

/// Frame-rule factory shared with the scene-free commands: "euclidean",
/// "pseudo(k,l)", "central(x,y)", "vertex(x,y)", "quadric(a,b)".
FrameRule parse_frame_rule(const std::string& text, int dim, bool* is_euclidean = nullptr);

}  // namespace billiards::app
