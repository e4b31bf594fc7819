#include "common.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace billiards::app {

void AppConfig::resolve() {
  if (tol_geometry <= 0 || tol_closure <= 0 || tol_root_dedup <= 0)
    throw input_error("tolerances must be positive");
  if (!out_flag.empty()) {
    out_dir = out_flag;
  } else if (const char* env = std::getenv("BILLIARDS_OUT_DIR"); env != nullptr && *env != '\0') {
    out_dir = env;
  } else {
    out_dir = ".";
  }
  if (!format_list.empty()) {
    formats.clear();
    for (const auto& f : format_list) {
      if (f != "csv" && f != "json" && f != "svg")
        throw input_error("unknown output format '" + f + "' (expected csv, json, or svg)");
      formats.insert(f);
    }
  }
}

std::string fmt9(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string fmt17(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

ParsedRational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw input_error("empty number");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.erase(0, 1);
  }

  auto fail = [&] { throw input_error("cannot parse number '" + text + "' (expected p/q, an integer, or a decimal)"); };

  ParsedRational out;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) fail();
    BigInt den(q);
    if (den == 0) throw input_error("zero denominator in '" + text + "'");
    out.value = Rational(BigInt(p)) / Rational(den);
  } else {
    // [digits][.digits][e[sign]digits]
    std::string mantissa = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      mantissa = s.substr(0, e);
      std::string es = s.substr(e + 1);
      bool eneg = false;
      if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
        eneg = es[0] == '-';
        es.erase(0, 1);
      }
      if (!all_digits(es) || es.size() > 6) fail();
      exp10 = std::stol(es) * (eneg ? -1 : 1);
      out.was_decimal = true;
    }
    std::string ip = mantissa, fp;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
      ip = mantissa.substr(0, dot);
      fp = mantissa.substr(dot + 1);
      out.was_decimal = true;
    }
    if (ip.empty() && fp.empty()) fail();
    if (!ip.empty() && !all_digits(ip)) fail();
    if (!fp.empty() && !all_digits(fp)) fail();
    BigInt digits(ip.empty() ? std::string("0") : ip);
    digits = digits * pow10(static_cast<unsigned>(fp.size())) + BigInt(fp.empty() ? std::string("0") : fp);
    long shift = exp10 - static_cast<long>(fp.size());
    out.value = Rational(digits);
    if (shift > 0) out.value *= Rational(pow10(static_cast<unsigned>(shift)));
    if (shift < 0) out.value /= Rational(pow10(static_cast<unsigned>(-shift)));
  }
  if (negative) out.value = -out.value;
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) throw input_error("empty entry in list '" + text + "'");
    try {
      std::size_t used = 0;
      double v = std::stod(cell, &used);
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
      out.push_back(v);
    } catch (const std::exception&) {
      throw input_error("cannot parse '" + cell + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw input_error("empty list '" + text + "'");
  return out;
}

OutputSink::OutputSink(std::string dir, std::set<std::string> formats)
    : dir_(std::move(dir)), formats_(std::move(formats)) {}

void OutputSink::stage(const std::string& filename, std::string content) {
  auto dot = filename.rfind('.');
  std::string ext = dot == std::string::npos ? "" : filename.substr(dot + 1);
  if (!wants(ext)) return;
  staged_.emplace_back(filename, std::move(content));
}

std::vector<std::string> OutputSink::staged_names() const {
  std::vector<std::string> names;
  names.reserve(staged_.size());
  for (const auto& [name, content] : staged_) names.push_back(name);
  return names;
}

std::vector<std::string> OutputSink::flush() {
  std::vector<std::string> written;
  if (staged_.empty()) return written;
  std::filesystem::create_directories(dir_);
  for (const auto& [name, content] : staged_) {
    std::filesystem::path path = std::filesystem::path(dir_) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw input_error("cannot write " + path.string());
    f << content;
    written.push_back(path.string());
  }
  return written;
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header) : columns_(header.size()) {
  row(header);
}

void CsvBuilder::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::logic_error("CSV row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

void SvgCanvas::polyline(std::vector<Eigen::Vector2d> pts, std::string stroke, double width_px,
                         bool closed) {
  if (pts.size() < 2) return;
  paths_.push_back({std::move(pts), std::move(stroke), width_px, closed});
}

void SvgCanvas::dot(const Eigen::Vector2d& center, double radius_px, std::string fill) {
  dots_.push_back({center, radius_px, std::move(fill)});
}

void SvgCanvas::axis_ellipse(const Eigen::Vector2d& center, double rx, double ry,
                             std::string stroke, double width_px) {
  ellipses_.push_back({center, rx, ry, std::move(stroke), width_px});
}

bool SvgCanvas::empty() const { return paths_.empty() && dots_.empty() && ellipses_.empty(); }

std::string SvgCanvas::render() const {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_y;
  auto grow = [&](double x, double y) {
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  };
  for (const auto& p : paths_)
    for (const auto& q : p.pts) grow(q.x(), q.y());
  for (const auto& d : dots_) grow(d.c.x(), d.c.y());
  for (const auto& e : ellipses_) {
    grow(e.c.x() - e.rx, e.c.y() - e.ry);
    grow(e.c.x() + e.rx, e.c.y() + e.ry);
  }
  if (!(lo_x <= hi_x)) {
    lo_x = lo_y = -1;
    hi_x = hi_y = 1;
  }
  double w = hi_x - lo_x, h = hi_y - lo_y;
  double span = std::max({w, h, 1e-9});
  const double view = 800.0, margin = 0.10;
  double scale = view * (1.0 - 2.0 * margin) / span;
  double cx = (lo_x + hi_x) / 2, cy = (lo_y + hi_y) / 2;
  auto X = [&](double x) { return view / 2 + scale * (x - cx); };
  auto Y = [&](double y) { return view / 2 - scale * (y - cy); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  s += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (const auto& e : ellipses_) {
    s += "<ellipse cx=\"" + fmt9(X(e.c.x())) + "\" cy=\"" + fmt9(Y(e.c.y())) + "\" rx=\"" +
         fmt9(scale * e.rx) + "\" ry=\"" + fmt9(scale * e.ry) + "\" fill=\"none\" stroke=\"" +
         e.stroke + "\" stroke-width=\"" + fmt9(e.width) + "\"/>\n";
  }
  for (const auto& p : paths_) {
    s += p.closed ? "<polygon points=\"" : "<polyline points=\"";
    for (std::size_t i = 0; i < p.pts.size(); ++i) {
      if (i) s += ' ';
      s += fmt9(X(p.pts[i].x())) + "," + fmt9(Y(p.pts[i].y()));
    }
    s += "\" fill=\"none\" stroke=\"" + p.stroke + "\" stroke-width=\"" + fmt9(p.width) + "\"/>\n";
  }
  for (const auto& d : dots_) {
    s += "<circle cx=\"" + fmt9(X(d.c.x())) + "\" cy=\"" + fmt9(Y(d.c.y())) + "\" r=\"" +
         fmt9(d.r) + "\" fill=\"" + d.fill + "\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace billiards::app
