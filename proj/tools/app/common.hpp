#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "billiards/caustics/rational.hpp"

namespace billiards::app {

/// Raised for anything the user typed wrong (flags, files, scene contents);
/// the driver maps it to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exit-code contract shared by every subcommand.
enum exit_code : int {
  exit_ok = 0,
  exit_violation = 1,  ///< a checked property failed its bound
  exit_input = 2,      ///< bad flags, files, or scene contents
  exit_numerical = 3,  ///< a numeric routine failed mid-computation
};

/// Global knobs shared by all subcommands. Identical configs yield
/// byte-identical CSV/JSON/SVG output.
struct AppConfig {
  double tol_geometry = 1e-8;                     ///< on-boundary / incidence checks
  double tol_closure = 1e-9;                      ///< orbit periodicity detection
  double tol_root_dedup = 1e-8;                   ///< relative root clustering distance
  std::uint64_t seed = 20260814;                  ///< RNG seed for sampled sweeps
  std::string out_flag;                           ///< --out value (may be empty)
  std::vector<std::string> format_list;           ///< --format values (may be empty)
  std::string out_dir = ".";                      ///< resolved output directory
  std::set<std::string> formats{"csv", "json", "svg"};

  /// Resolve directory (flag > BILLIARDS_OUT_DIR > ".") and format set, and
  /// reject non-positive tolerances.
  void resolve();
};

/// Fixed 9-significant-digit formatting (used for all SVG geometry).
std::string fmt9(double x);
/// Round-trip formatting (used for CSV numeric cells).
std::string fmt17(double x);

/// Exact fraction from "p/q", "p", or a decimal/scientific literal.
/// `was_decimal` flags inputs that had to be converted digit-by-digit.
struct ParsedRational {
  Rational value;
  bool was_decimal = false;
};
ParsedRational parse_rational(const std::string& text);

/// Comma-separated doubles ("1.5,2,-3"); throws input_error on junk.
std::vector<double> parse_double_list(const std::string& text);

/// Buffered file output: contents accumulate in memory and hit the disk once,
/// at the end of the command.
class OutputSink {
 public:
  OutputSink(std::string dir, std::set<std::string> formats);
  bool wants(const std::string& format) const { return formats_.count(format) > 0; }
  /// Queue a file (no-op when its extension's format is disabled).
  void stage(const std::string& filename, std::string content);
  /// Names staged so far (for the summary's output list).
  std::vector<std::string> staged_names() const;
  /// Write everything and return the paths written.
  std::vector<std::string> flush();

 private:
  std::string dir_;
  std::set<std::string> formats_;
  std::vector<std::pair<std::string, std::string>> staged_;
};

/// Minimal CSV accumulation with a fixed header row.
class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return body_; }

 private:
  std::string body_;
  std::size_t columns_;
};

/// Deferred-layout SVG canvas: an 800x800 viewport whose world window is
/// auto-fitted to the staged geometry with a 10% margin, equal scales on both
/// axes, and y pointing up.
class SvgCanvas {
 public:
  void polyline(std::vector<Eigen::Vector2d> pts, std::string stroke, double width_px,
                bool closed = false);
  void dot(const Eigen::Vector2d& center, double radius_px, std::string fill);
  /// Axis-aligned ellipse, world-coordinate center and semi-axes.
  void axis_ellipse(const Eigen::Vector2d& center, double rx, double ry, std::string stroke,
                    double width_px);
  bool empty() const;
  std::string render() const;

 private:
  struct Path {
    std::vector<Eigen::Vector2d> pts;
    std::string stroke;
    double width;
    bool closed;
  };
  struct Dot {
    Eigen::Vector2d c;
    double r;
    std::string fill;
  };
  struct Ellipse {
    Eigen::Vector2d c;
    double rx, ry;
    std::string stroke;
    double width;
  };
  std::vector<Path> paths_;
  std::vector<Dot> dots_;
  std::vector<Ellipse> ellipses_;
};

}  // namespace billiards::app
