#include "polydisc_cli/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "polydisc/diamgraph.hpp"
#include "polydisc/errors.hpp"

namespace polydisc::cli {

namespace {

constexpr double kSize = 800.0;
constexpr double kMargin = 0.05 * kSize;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const PointConfig& z_in, double rel_tol) {
  if (z_in.size() < 2) throw InvalidInput("SVG needs at least two points");
  const PointConfig z = normalize_to_diameter(z_in, 2.0);
  double xmin = z[0].real(), xmax = xmin, ymin = z[0].imag(), ymax = ymin;
  for (Point p : z) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const Point c((xmin + xmax) / 2.0, (ymin + ymax) / 2.0);
  // World half-width covers both the points and the unit circle around their box centre.
  const double half = std::max({1.0, (xmax - xmin) / 2.0, (ymax - ymin) / 2.0});
  const double s = (kSize - 2.0 * kMargin) / (2.0 * half);
  auto X = [&](Point p) { return kSize / 2.0 + s * (p.real() - c.real()); };
  auto Y = [&](Point p) { return kSize / 2.0 - s * (p.imag() - c.imag()); };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n"
    << "  <rect width=\"800\" height=\"800\" fill=\"white\"/>\n"
    << "  <circle class=\"guide\" cx=\"" << fmt(X(c)) << "\" cy=\"" << fmt(Y(c)) << "\" r=\"" << fmt(s)
    << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";

  if (z.size() >= 3) {
    o << "  <polygon class=\"hull\" points=\"";
    const auto hull = convex_hull(z);
    for (std::size_t i = 0; i < hull.size(); ++i) {
      if (i) o << ' ';
      o << fmt(X(z[hull[i]])) << ',' << fmt(Y(z[hull[i]]));
    }
    o << "\" fill=\"#eef3fb\" stroke=\"#9db4d8\" stroke-width=\"1\"/>\n";
  }

  for (const Edge& e : extract(z, rel_tol).edges) {
    o << "  <line class=\"diameter\" x1=\"" << fmt(X(z[e.first])) << "\" y1=\"" << fmt(Y(z[e.first])) << "\" x2=\""
      << fmt(X(z[e.second])) << "\" y2=\"" << fmt(Y(z[e.second])) << "\" stroke=\"#c0392b\" stroke-width=\"3\"/>\n";
  }
  for (Point p : z) {
    o << "  <circle class=\"point\" cx=\"" << fmt(X(p)) << "\" cy=\"" << fmt(Y(p))
      << "\" r=\"5\" fill=\"black\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::string out = "n,log_delta,delta_bar,delta_bar_section4\n";
  char buf[128];
  for (const TableRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,", r.n, r.log_delta, r.delta_bar);
    out += buf;
    if (r.delta_bar_section4) {
      std::snprintf(buf, sizeof buf, "%.17g", *r.delta_bar_section4);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<TableRow> parse_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "n,log_delta,delta_bar,delta_bar_section4") {
    throw InvalidInput("unexpected CSV header");
  }
  std::vector<TableRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 4) throw InvalidInput("CSV row needs 4 fields: " + line);
    TableRow r;
    try {
      r.n = std::stoi(f[0]);
      r.log_delta = std::stod(f[1]);
      r.delta_bar = std::stod(f[2]);
      if (!f[3].empty()) r.delta_bar_section4 = std::stod(f[3]);
    } catch (const std::exception&) {
      throw InvalidInput("bad CSV row: " + line);
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace polydisc::cli
