#include "stou/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace stou {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_field_csv(const FieldData& field, std::ostream& out) {
  out << "x,t,value\n";
  for (Eigen::Index i = 0; i < field.grid.n; ++i)
    for (Eigen::Index j = 0; j < field.grid.m; ++j)
      if (field.mask(i, j))
        out << format_g17(field.grid.x(i + 1)) << ','
            << format_g17(field.grid.t(j + 1)) << ','
            << format_g17(field.values(i, j)) << '\n';
}

void write_field_csv(const FieldData& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: keep LF endings
  if (!out) throw Error("cannot open for writing: " + path);
  write_field_csv(field, out);
  if (!out) throw Error("write failed: " + path);
}

namespace {

struct CsvPoint {
  double x, t, value;
};

std::vector<CsvPoint> parse_points(std::istream& in) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line))
    throw ParseError("line 1: empty input, expected header x,t,value");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,t,value")
    throw ParseError("line 1: expected header exactly `x,t,value`");

  std::vector<CsvPoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    CsvPoint p;
    char extra;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &p.x, &p.t, &p.value,
                    &extra) != 3)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected three comma-separated numbers");
    if (!std::isfinite(p.x) || !std::isfinite(p.t) || !std::isfinite(p.value))
      throw ParseError("line " + std::to_string(line_no) +
                       ": non-finite coordinate or value");
    points.push_back(p);
  }
  if (points.empty()) throw ParseError("no data rows");
  return points;
}

// Sorted unique coordinates plus the validated uniform spacing (1.0 when a
// single coordinate leaves the spacing undetermined).
std::pair<std::vector<double>, double> unique_axis(std::vector<double> coords) {
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  if (coords.size() == 1) return {coords, 1.0};
  const double span = coords.back() - coords.front();
  const double d = span / static_cast<double>(coords.size() - 1);
  for (std::size_t i = 1; i < coords.size(); ++i) {
    const double gap = coords[i] - coords[i - 1];
    if (std::abs(gap - d) > 1e-9 * std::max(std::abs(d), 1.0))
      throw NonUniformGrid("coordinate spacing is not uniform");
  }
  return {coords, d};
}

Eigen::Index axis_index(double coord, double origin, double spacing) {
  return static_cast<Eigen::Index>(std::llround((coord - origin) / spacing));
}

}  // namespace

FieldData read_field_csv(std::istream& in) {
  const auto points = parse_points(in);

  std::vector<double> xs, ts;
  xs.reserve(points.size());
  ts.reserve(points.size());
  for (const auto& p : points) {
    xs.push_back(p.x);
    ts.push_back(p.t);
  }
  const auto [ux, dx] = unique_axis(std::move(xs));
  const auto [ut, dt] = unique_axis(std::move(ts));

  GridSpec grid;
  grid.x0 = ux.front();
  grid.t0 = ut.front();
  grid.dx = dx;
  grid.dt = dt;
  grid.n = static_cast<Eigen::Index>(ux.size());
  grid.m = static_cast<Eigen::Index>(ut.size());

  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(grid.n, grid.m);
  BoolMatrix mask = BoolMatrix::Constant(grid.n, grid.m, false);
  for (const auto& p : points) {
    const Eigen::Index i = axis_index(p.x, grid.x0, grid.dx);
    const Eigen::Index j = axis_index(p.t, grid.t0, grid.dt);
    if (mask(i, j)) throw ParseError("duplicate point in input");
    values(i, j) = p.value;
    mask(i, j) = true;
  }
  return FieldData(grid, std::move(values), std::move(mask));
}

FieldData read_field_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  return read_field_csv(in);
}

SiteList read_sites_csv(std::istream& in) {
  const auto points = parse_points(in);
  SiteList list;
  for (const auto& p : points) {
    list.sites.emplace_back(p.x, p.t);
    list.values.push_back(p.value);
  }
  return list;
}

SiteList read_sites_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  return read_sites_csv(in);
}

}  // namespace stou
