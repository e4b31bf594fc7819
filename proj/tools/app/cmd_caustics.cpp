#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <iostream>

#include "billiards/caustics/cayley.hpp"
#include "billiards/caustics/poncelet.hpp"
#include "billiards/projcore/quadric.hpp"
#include "commands.hpp"

namespace billiards::app {

using nlohmann::json;

namespace {

struct RootRow {
  std::complex<double> value;
  int multiplicity;
  CausticClass cls;
  json poncelet;  ///< null unless --check-poncelet ran on this root
};

struct NResult {
  unsigned n = 0;
  int degree = 0;
  std::vector<std::string> coefficients;  ///< integer-normalized, ascending
  std::vector<RootRow> roots;
  json closed_form;  ///< null unless --closed-form
};

/// Sample points of one branch of x^2/A - y^2/B = 1 (A, B > 0), x > 0.
std::vector<Eigen::Vector2d> hyperbola_branch(double A, double B, double x_max) {
  std::vector<Eigen::Vector2d> pts;
  double t_max = std::acosh(std::max(1.5, x_max / std::sqrt(A)));
  for (int i = 0; i <= 64; ++i) {
    double t = -t_max + 2 * t_max * i / 64.0;
    pts.emplace_back(std::sqrt(A) * std::cosh(t), std::sqrt(B) * std::sinh(t));
  }
  return pts;
}

NResult compute_for_n(unsigned n, const Rational& a, const Rational& b, const CausticsOptions& opt,
                      const AppConfig& cfg) {
  const double ad = static_cast<double>(a), bd = static_cast<double>(b);
  NResult res;
  res.n = n;

  RationalPoly poly = normalized_caustic_polynomial(n, a, b);
  res.degree = poly.degree();
  for (const BigInt& c : poly.integer_normalized()) res.coefficients.push_back(c.str());

  auto clusters = clustered_roots(poly, cfg.tol_root_dedup);
  std::sort(clusters.begin(), clusters.end(), [](const RootCluster& l, const RootCluster& r) {
    if (l.value.real() != r.value.real()) return l.value.real() < r.value.real();
    return l.value.imag() < r.value.imag();
  });

  ConfocalFamily family = ConfocalFamily::euclidean({ad, bd});
  for (const auto& cluster : clusters) {
    RootRow row{cluster.value, cluster.multiplicity, classify_caustic_root(cluster.value, ad, bd),
                json(nullptr)};
    bool real_root = std::abs(cluster.value.imag()) <= 1e-9 * (1.0 + std::abs(cluster.value.real()));
    if (opt.check_poncelet && row.cls != CausticClass::excluded && real_root) {
      PonceletRunReport run = poncelet_closure(axis_conic<double>(ad, bd),
                                               family.member(cluster.value.real()), n, opt.starts,
                                               cfg.tol_closure);
      double rotation = std::numeric_limits<double>::quiet_NaN();
      for (double r : run.rotation_numbers)
        if (std::isfinite(r)) {
          rotation = r;
          break;
        }
      row.poncelet = {{"closes", run.closes},
                      {"all_or_none", run.all_or_none},
                      {"max_residual", run.max_residual},
                      {"complex_path", run.used_complex_path},
                      {"general_position", run.general_position}};
      row.poncelet["rotation_number"] = std::isfinite(rotation) ? json(rotation) : json(nullptr);
    }
    res.roots.push_back(std::move(row));
  }

  if (opt.closed_form) {
    std::vector<double> expected;
    if (n == 3) {
      ThreeCausticRoots cf = three_caustics_closed_form(ad, bd);
      expected = {cf.lambda_plus, cf.lambda_minus};
    } else {
      auto cf = four_caustics_closed_form(ad, bd);
      expected.assign(cf.begin(), cf.end());
    }
    std::sort(expected.begin(), expected.end());
    double worst = 0.0;
    for (double value : expected) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& row : res.roots) best = std::min(best, std::abs(row.value - value));
      worst = std::max(worst, best / std::max(1.0, std::abs(value)));
    }
    res.closed_form = {{"values", expected}, {"max_relative_mismatch", worst}};
  }

  return res;
}

}  // namespace

int run_caustics(const CausticsOptions& opt, const AppConfig& cfg) {
  ParsedRational pa = parse_rational(opt.a), pb = parse_rational(opt.b);
  for (const auto* p : {&pa, &pb})
    if (p->was_decimal)
      std::cerr << "warning: decimal input converted to the exact fraction "
                << Rational(p->value).str() << "; pass p/q to control exactness\n";
  if (pa.value == 0 || pb.value == 0) throw input_error("a and b must be nonzero");
  if (opt.n_list.empty()) throw input_error("at least one -n value is required");
  for (unsigned n : opt.n_list) {
    if (n < 3) throw input_error("n must be at least 3");
    if (opt.closed_form && n != 3 && n != 4)
      throw input_error("--closed-form is available for n = 3 and n = 4 only");
  }

  // Fan the n sweep out across tasks; results are joined in request order so
  // the output is independent of scheduling.
  std::vector<std::future<NResult>> futures;
  futures.reserve(opt.n_list.size());
  for (unsigned n : opt.n_list)
    futures.push_back(std::async(std::launch::async, compute_for_n, n, pa.value, pb.value,
                                 std::cref(opt), std::cref(cfg)));
  std::vector<NResult> results;
  results.reserve(futures.size());
  for (auto& f : futures) results.push_back(f.get());

  const double ad = static_cast<double>(pa.value), bd = static_cast<double>(pb.value);
  OutputSink sink(cfg.out_dir, cfg.formats);

  CsvBuilder csv({"n", "a", "b", "degree", "root_re", "root_im", "multiplicity", "class"});
  for (const auto& res : results)
    for (const auto& row : res.roots)
      csv.row({std::to_string(res.n), pa.value.str(), pb.value.str(), std::to_string(res.degree),
               fmt17(row.value.real()), fmt17(row.value.imag()), std::to_string(row.multiplicity),
               to_string(row.cls)});
  sink.stage("caustics.csv", csv.str());

  if (ad > 0 && bd > 0) {
    for (const auto& res : results) {
      SvgCanvas svg;
      svg.axis_ellipse({0, 0}, std::sqrt(ad), std::sqrt(bd), "black", 2.0);
      for (const auto& row : res.roots) {
        if (std::abs(row.value.imag()) > 1e-9) continue;
        double lambda = row.value.real();
        double da = ad - lambda, db = bd - lambda;
        if (row.cls == CausticClass::ellipse) {
          svg.axis_ellipse({0, 0}, std::sqrt(da), std::sqrt(db), "steelblue", 1.5);
        } else if (row.cls == CausticClass::hyperbola) {
          double clip = 1.4 * std::sqrt(std::max(ad, bd));
          if (da > 0) {  // branches open along x
            auto branch = hyperbola_branch(da, -db, clip);
            svg.polyline(branch, "indianred", 1.5);
            for (auto& p : branch) p.x() = -p.x();
            svg.polyline(branch, "indianred", 1.5);
          } else {  // branches open along y
            auto branch = hyperbola_branch(db, -da, clip);
            for (auto& p : branch) std::swap(p.x(), p.y());
            svg.polyline(branch, "indianred", 1.5);
            for (auto& p : branch) p.y() = -p.y();
            svg.polyline(branch, "indianred", 1.5);
          }
        }
      }
      sink.stage("caustics_n" + std::to_string(res.n) + ".svg", svg.render());
    }
  }

  json summary;
  summary["command"] = "caustics";
  summary["a"] = pa.value.str();
  summary["b"] = pb.value.str();
  summary["seed"] = cfg.seed;
  json entries = json::array();
  for (const auto& res : results) {
    json roots = json::array();
    for (const auto& row : res.roots) {
      json r = {{"re", row.value.real()},
                {"im", row.value.imag()},
                {"multiplicity", row.multiplicity},
                {"class", to_string(row.cls)}};
      if (!row.poncelet.is_null()) r["poncelet"] = row.poncelet;
      roots.push_back(std::move(r));
    }
    json entry = {{"n", res.n},
                  {"degree", res.degree},
                  {"polynomial", {{"variable", "X"}, {"coefficients_ascending", res.coefficients}}},
                  {"roots", std::move(roots)}};
    if (!res.closed_form.is_null()) entry["closed_form"] = res.closed_form;
    entries.push_back(std::move(entry));
  }
  summary["reports"] = std::move(entries);

  summary["outputs"] = sink.staged_names();
  if (sink.wants("json")) summary["outputs"].push_back("caustics.json");
  sink.stage("caustics.json", summary.dump(2) + "\n");
  sink.flush();

  std::cout << summary.dump(2) << "\n";
  return exit_ok;
}

}  // namespace billiards::app
