#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>

#include "billiards/analysis/analysis.hpp"
#include "billiards/caustics/tangency.hpp"
#include "billiards/projcore/quadric.hpp"
#include "billiards/reflect/orbit.hpp"
#include "commands.hpp"

namespace billiards::app {

using nlohmann::json;

namespace {

const char* fit_class_name(FittedConicClass c) {
  switch (c) {
    case FittedConicClass::ellipse: return "ellipse";
    case FittedConicClass::hyperbola: return "hyperbola";
    case FittedConicClass::parabola: return "parabola";
    case FittedConicClass::point: return "point";
    default: return "other";
  }
}

/// Symmetric Hausdorff distance between a finite point set and its mirror
/// image across the x-axis.
double mirror_hausdorff(const std::vector<Eigen::Vector2d>& pts) {
  double worst = 0.0;
  for (const auto& p : pts) {
    Eigen::Vector2d m(p.x(), -p.y());
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : pts) best = std::min(best, (m - q).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

double to_double(const std::string& text) { return static_cast<double>(parse_rational(text).value); }

}  // namespace

int run_circumcenters(const CircumcentersOptions& opt, const AppConfig& cfg) {
  double a = to_double(opt.a), b = to_double(opt.b);
  if (a <= 0 || b <= 0) throw input_error("-a and -b must be positive squared semi-axes");
  if (opt.orbits < 3) throw input_error("-N must be at least 3");

  CircumcenterLocus locus = circumcenter_locus(a, b, opt.orbits);
  const bool circle = std::abs(a - b) <= 1e-12 * std::max(a, b);
  const double fit_bound = 1e-8;
  double symmetry = mirror_hausdorff(locus.centers);

  std::vector<std::string> violations;
  if (circle) {
    if (locus.fit.cls != FittedConicClass::point)
      violations.push_back("circle locus did not collapse to a point");
  } else {
    if (locus.fit.cls != FittedConicClass::ellipse)
      violations.push_back(std::string("locus fit class is ") + fit_class_name(locus.fit.cls) +
                           ", expected ellipse");
    if (!(locus.fit.residual < fit_bound)) violations.push_back("locus fit residual exceeds 1e-8");
    if (!(symmetry < fit_bound)) violations.push_back("locus is not mirror-symmetric about the x-axis");
  }

  OutputSink sink(cfg.out_dir, cfg.formats);
  CsvBuilder csv({"orbit", "x", "y"});
  for (std::size_t i = 0; i < locus.centers.size(); ++i)
    csv.row({std::to_string(i), fmt17(locus.centers[i].x()), fmt17(locus.centers[i].y())});
  sink.stage("circumcenters.csv", csv.str());

  SvgCanvas svg;
  svg.axis_ellipse({0, 0}, std::sqrt(a), std::sqrt(b), "black", 2.0);
  for (const auto& c : locus.centers) svg.dot(c, 2.0, "crimson");
  // The fitted conic is axis-aligned for this symmetric locus; draw it when
  // its coefficients describe a real ellipse.
  const auto& q = locus.fit.coefficients;  // A, B, C, D, E, F
  if (locus.fit.cls == FittedConicClass::ellipse && std::abs(q[1]) < 1e-6) {
    double cx = -q[3] / (2 * q[0]), cy = -q[4] / (2 * q[2]);
    double k = q[0] * cx * cx + q[2] * cy * cy - q[5];
    if (k / q[0] > 0 && k / q[2] > 0)
      svg.axis_ellipse({cx, cy}, std::sqrt(k / q[0]), std::sqrt(k / q[2]), "steelblue", 1.5);
  }
  sink.stage("circumcenters.svg", svg.render());

  json summary;
  summary["command"] = "circumcenters";
  summary["a"] = a;
  summary["b"] = b;
  summary["orbits"] = opt.orbits;
  summary["class"] = fit_class_name(locus.fit.cls);
  summary["residual"] = locus.fit.residual;
  summary["mirror_symmetry"] = symmetry;
  summary["coefficients"] = std::vector<double>(locus.fit.coefficients.data(),
                                                locus.fit.coefficients.data() + 6);
  summary["violations"] = violations;
  summary["outputs"] = sink.staged_names();
  if (sink.wants("json")) summary["outputs"].push_back("circumcenters.json");
  sink.stage("circumcenters.json", summary.dump(2) + "\n");
  sink.flush();

  std::cout << summary.dump(2) << "\n";
  return violations.empty() ? exit_ok : exit_violation;
}

int run_chasles(const ChaslesOptions& opt, const AppConfig& cfg) {
  std::vector<double> axes;
  if (!opt.axes.empty()) {
    axes = parse_double_list(opt.axes);
  } else {
    axes = {to_double(opt.a), to_double(opt.b)};
  }
  for (double v : axes)
    if (v <= 0) throw input_error("squared semi-axes must be positive");
  const int d = static_cast<int>(axes.size());
  if (d < 2 || d > 3) throw input_error("chasles supports dimensions 2 and 3");

  std::vector<double> sig = parse_double_list(opt.signature);
  if (sig.size() != 2 || sig[0] < 0 || sig[1] < 0 ||
      static_cast<int>(sig[0]) + static_cast<int>(sig[1]) != d)
    throw input_error("--signature needs k,l with k + l = " + std::to_string(d));
  std::vector<double> metric(static_cast<std::size_t>(d), -1.0);
  for (int j = 0; j < static_cast<int>(sig[0]); ++j) metric[static_cast<std::size_t>(j)] = 1.0;

  if (opt.bounces < 1) throw input_error("--bounces must be positive");

  QuadricBoundary table(axes, pseudo_euclidean_frame(metric));
  Eigen::VectorXd p0, p1;
  if (d == 2) {
    p0 = table.point_at(opt.theta0);
    p1 = table.point_at(opt.theta1);
  } else {
    p0 = table.point_at(opt.theta0, opt.phi0);
    p1 = table.point_at(opt.theta1, opt.phi1);
  }

  ChaslesReport report = chasles_invariance(axes, metric, p0, p1, opt.bounces);
  if (report.chords == 0)
    throw numerical_error("the seed chord is light-like; choose different start angles");

  const double drift_bound = 1e-8;
  std::vector<std::string> violations;
  if (!(report.max_drift < drift_bound)) violations.push_back("tangency-parameter drift exceeds 1e-8");

  OutputSink sink(cfg.out_dir, cfg.formats);
  std::vector<std::string> header = {"chord"};
  for (int j = 1; j < d; ++j) header.push_back("lambda_" + std::to_string(j));
  CsvBuilder csv(header);
  for (std::size_t i = 0; i < report.parameters.size(); ++i) {
    std::vector<std::string> cells = {std::to_string(i)};
    for (int j = 0; j < d - 1; ++j)
      cells.push_back(j < static_cast<int>(report.parameters[i].size())
                          ? fmt17(report.parameters[i][static_cast<std::size_t>(j)])
                          : "");
    csv.row(cells);
  }
  sink.stage("chasles.csv", csv.str());

  // Presentational trace of the same orbit (partial if a reflection later
  // degenerates); 3D orbits are drawn in xy-projection.
  SvgCanvas svg;
  if (d == 2) svg.axis_ellipse({0, 0}, std::sqrt(axes[0]), std::sqrt(axes[1]), "black", 2.0);
  {
    std::vector<Eigen::Vector2d> trace = {{p0[0], p0[1]}, {p1[0], p1[1]}};
    Eigen::VectorXd prev = p0, cur = p1;
    try {
      for (int i = 0; i < opt.bounces; ++i) {
        Eigen::VectorXd next = billiard_step(table, prev, cur);
        trace.emplace_back(next[0], next[1]);
        prev = cur;
        cur = next;
      }
    } catch (const billiards::error&) {
      // keep the partial trace
    }
    svg.polyline(trace, "steelblue", 1.0);
  }
  sink.stage("chasles.svg", svg.render());

  json summary;
  summary["command"] = "chasles";
  summary["axes"] = axes;
  summary["signature"] = {static_cast<int>(sig[0]), static_cast<int>(sig[1])};
  summary["bounces"] = opt.bounces;
  summary["chords"] = report.chords;
  summary["parameters_per_chord"] = d - 1;
  summary["first_parameters"] = report.parameters.front();
  summary["max_drift"] = report.max_drift;
  summary["stopped_light_like"] =
      report.stopped_light_like >= 0 ? json(report.stopped_light_like) : json(nullptr);
  summary["violations"] = violations;
  summary["outputs"] = sink.staged_names();
  if (sink.wants("json")) summary["outputs"].push_back("chasles.json");
  sink.stage("chasles.json", summary.dump(2) + "\n");
  sink.flush();

  std::cout << summary.dump(2) << "\n";
  return violations.empty() ? exit_ok : exit_violation;
}

namespace {

struct CrossValidation {
  std::vector<Eigen::Vector3d> normals;  ///< confocal tangent-trace normals in the tangent plane
  double orthogonality = 0.0;            ///< |cos| between the two member normals at tangency
  bool usable = false;
};

/// The tangent-plane hyperplane normals predicted by confocal tangency: for
/// each parameter of the line {B + t (nu + ratio xi)}, project the member's
/// gradient at the tangency point into the tangent plane of the ellipsoid.
CrossValidation confocal_hyperplanes(const std::array<double, 3>& axes, const SurfaceJet& jet,
                                     const Eigen::Vector3d& xi, double ratio) {
  CrossValidation cv;
  ConfocalFamily family = ConfocalFamily::euclidean({axes[0], axes[1], axes[2]});
  Eigen::Vector3d e = jet.normal + ratio * xi;
  Eigen::VectorXd P = jet.p, V = e;
  std::vector<double> lambdas;
  try {
    lambdas = tangency_parameters(family, P, V);
  } catch (const billiards::error&) {
    return cv;
  }
  std::vector<Eigen::Vector3d> member_normals;
  Eigen::Matrix3d tangential = Eigen::Matrix3d::Identity() - jet.normal * jet.normal.transpose();
  for (double lambda : lambdas) {
    Eigen::VectorXd A;
    try {
      A = tangency_point(family, P, V, lambda);
    } catch (const billiards::error&) {
      continue;  // degenerate member (e.g. the sphere's repeated parameter)
    }
    Eigen::Vector3d grad;
    for (int j = 0; j < 3; ++j) grad[j] = 2 * A[j] / family.denom(static_cast<std::size_t>(j), lambda);
    Eigen::Vector3d eta = tangential * grad;
    if (eta.norm() < 1e-12 * grad.norm()) continue;
    member_normals.push_back(grad.normalized());
    cv.normals.push_back(eta.normalized());
  }
  if (member_normals.size() == 2)
    cv.orthogonality = std::abs(member_normals[0].dot(member_normals[1]));
  cv.usable = !cv.normals.empty();
  return cv;
}

double direction_distance(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  return std::min((u - v).norm(), (u + v).norm());
}

/// Best worst-case pairing distance between the admitted set and the
/// confocal prediction (both are direction sets of size <= 2).
double match_sets(const std::vector<Eigen::Vector3d>& got, const std::vector<Eigen::Vector3d>& want) {
  if (got.size() != want.size()) return std::numeric_limits<double>::infinity();
  if (got.empty()) return 0.0;
  if (got.size() == 1) return direction_distance(got[0].normalized(), want[0]);
  double straight = std::max(direction_distance(got[0].normalized(), want[0]),
                             direction_distance(got[1].normalized(), want[1]));
  double swapped = std::max(direction_distance(got[0].normalized(), want[1]),
                            direction_distance(got[1].normalized(), want[0]));
  return std::min(straight, swapped);
}

}  // namespace

int run_permitted(const PermittedOptions& opt, const AppConfig& cfg) {
  std::vector<double> axes_list = parse_double_list(opt.ellipsoid);
  if (axes_list.size() != 3) throw input_error("--ellipsoid needs three squared semi-axes a,b,c");
  for (double v : axes_list)
    if (v <= 0) throw input_error("--ellipsoid entries must be positive");
  if (opt.samples < 1) throw input_error("--samples must be positive");
  if (opt.ratio == 0) throw input_error("--ratio must be nonzero");
  std::array<double, 3> axes = {axes_list[0], axes_list[1], axes_list[2]};

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> latitude(-1.2, 1.2);
  std::normal_distribution<double> gauss(0.0, 1.0);

  OutputSink sink(cfg.out_dir, cfg.formats);
  CsvBuilder csv({"sample", "px", "py", "pz", "xix", "xiy", "xiz", "count", "alpha_1", "eta1x",
                  "eta1y", "eta1z", "alignment_1", "alpha_2", "eta2x", "eta2y", "eta2z",
                  "alignment_2", "cross_validation", "orthogonality"});

  int min_count = 3, max_count = 0, retried = 0, resampled = 0;
  double worst_match = 0.0, worst_orth = 0.0;
  std::vector<std::string> violations;

  for (int sample = 0; sample < opt.samples; ++sample) {
    constexpr int budget = 64;
    bool recorded = false;
    for (int attempt = 0; attempt < budget && !recorded; ++attempt) {
      double theta = angle(rng), phi = latitude(rng);
      Eigen::Vector3d p(std::sqrt(axes[0]) * std::cos(phi) * std::cos(theta),
                        std::sqrt(axes[1]) * std::cos(phi) * std::sin(theta),
                        std::sqrt(axes[2]) * std::sin(phi));
      Eigen::Vector3d raw(gauss(rng), gauss(rng), gauss(rng));
      SurfaceJet jet = ellipsoid_jet(axes, p);
      Eigen::Vector3d xi = raw - jet.normal * jet.normal.dot(raw);
      if (xi.norm() < 1e-6) {
        ++resampled;
        continue;
      }
      xi.normalize();

      PermittedHyperplanes ph;
      try {
        ph = permitted_hyperplanes(jet, xi, opt.ratio);
      } catch (const billiards::error&) {
        ++resampled;
        continue;
      }
      CrossValidation cv = confocal_hyperplanes(axes, jet, xi, opt.ratio);
      if (!cv.usable) {
        ++resampled;
        continue;
      }
      recorded = true;
      if (ph.retried_for_exceptional) ++retried;

      int count = static_cast<int>(ph.eta.size());
      min_count = std::min(min_count, count);
      max_count = std::max(max_count, count);
      double match = match_sets(ph.eta, cv.normals);
      worst_match = std::max(worst_match, match);
      worst_orth = std::max(worst_orth, cv.orthogonality);

      if (count > 2) violations.push_back("sample " + std::to_string(sample) + ": more than 2 hyperplanes");
      if (!(match < 1e-8))
        violations.push_back("sample " + std::to_string(sample) + ": confocal cross-validation mismatch");
      if (cv.normals.size() == 2 && !(cv.orthogonality < 1e-8))
        violations.push_back("sample " + std::to_string(sample) + ": tangent hyperplanes not orthogonal");

      std::vector<std::string> cells = {std::to_string(sample), fmt17(p.x()),  fmt17(p.y()),
                                        fmt17(p.z()),           fmt17(xi.x()), fmt17(xi.y()),
                                        fmt17(xi.z()),          std::to_string(count)};
      for (int j = 0; j < 2; ++j) {
        if (j < count) {
          Eigen::Vector3d eta = ph.eta[static_cast<std::size_t>(j)].normalized();
          cells.push_back(fmt17(ph.alphas[static_cast<std::size_t>(j)]));
          cells.push_back(fmt17(eta.x()));
          cells.push_back(fmt17(eta.y()));
          cells.push_back(fmt17(eta.z()));
          cells.push_back(fmt17(ph.alignment[static_cast<std::size_t>(j)]));
        } else {
          cells.insert(cells.end(), {"", "", "", "", ""});
        }
      }
      cells.push_back(fmt17(match));
      cells.push_back(fmt17(cv.orthogonality));
      csv.row(cells);
    }
    if (!recorded) {
      violations.push_back("sample " + std::to_string(sample) + ": resampling budget exhausted");
      break;
    }
  }

  sink.stage("permitted.csv", csv.str());

  json summary;
  summary["command"] = "permitted";
  summary["ellipsoid"] = axes_list;
  summary["samples"] = opt.samples;
  summary["ratio"] = opt.ratio;
  summary["seed"] = cfg.seed;
  summary["min_count"] = min_count;
  summary["max_count"] = max_count;
  summary["exceptional_retries"] = retried;
  summary["resamples"] = resampled;
  summary["max_cross_validation"] = worst_match;
  summary["max_orthogonality"] = worst_orth;
  summary["violations"] = violations;
  summary["outputs"] = sink.staged_names();
  if (sink.wants("json")) summary["outputs"].push_back("permitted.json");
  sink.stage("permitted.json", summary.dump(2) + "\n");
  sink.flush();

  std::cout << summary.dump(2) << "\n";
  return violations.empty() ? exit_ok : exit_violation;
}

}  // namespace billiards::app
