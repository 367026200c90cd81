#include "subhyp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "subhyp/errors.hpp"

namespace subhyp {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

Svg::Svg(Box view, int width_px) : view_(view), width_(width_px) {
  const double pad = 0.05 * std::max(view.width(), view.height());
  view_.lo = view.lo - Point{pad, pad};
  view_.hi = view.hi + Point{pad, pad};
  scale_ = width_ / view_.width();
  height_ = static_cast<int>(std::ceil(view_.height() * scale_));
}

double Svg::px(double x) const { return (x - view_.lo.x) * scale_; }
double Svg::py(double y) const { return (view_.hi.y - y) * scale_; }

void Svg::domain(const PlanarDomain& d, const std::string& stroke) {
  std::string path;
  for (std::size_t i = 0; i < d.segment_count(); ++i) {
    const Point a = d.segment_start(i), b = d.segment_end(i);
    path += "M" + num(px(a.x)) + " " + num(py(a.y)) + "L" + num(px(b.x)) + " " + num(py(b.y));
  }
  items_.push_back("<path d=\"" + path + "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.2\"/>");
}

void Svg::polyline(const std::vector<Point>& pts, const std::string& stroke, double width_px) {
  std::string p;
  for (const Point& q : pts) p += num(px(q.x)) + "," + num(py(q.y)) + " ";
  items_.push_back("<polyline points=\"" + p + "\" fill=\"none\" stroke=\"" + stroke +
                   "\" stroke-width=\"" + num(width_px) + "\"/>");
}

void Svg::cube(const Cube& q, const std::string& stroke, double opacity) {
  const double side = 2.0 * q.radius * scale_;
  items_.push_back("<rect x=\"" + num(px(q.center.x - q.radius)) + "\" y=\"" +
                   num(py(q.center.y + q.radius)) + "\" width=\"" + num(side) + "\" height=\"" + num(side) +
                   "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-opacity=\"" + num(opacity) +
                   "\" stroke-width=\"0.8\"/>");
}

void Svg::point(Point p, const std::string& fill, double radius_px) {
  items_.push_back("<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) + "\" r=\"" + num(radius_px) +
                   "\" fill=\"" + fill + "\"/>");
}

void Svg::field(const ScalarField& f) {
  double hi = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (f.inside[i]) hi = std::max(hi, std::abs(f.values[i]));
  const double side = f.h * scale_;
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) {
      if (!f.is_inside(i, j)) continue;
      const double t = hi > 0.0 ? std::abs(f.value(i, j)) / hi : 0.0;
      const int g = 255 - static_cast<int>(std::lround(200.0 * t));
      const Point c = f.center(i, j);
      char color[8];
      std::snprintf(color, sizeof color, "#%02x%02x%02x", g, g, 255);
      items_.push_back("<rect x=\"" + num(px(c.x - 0.5 * f.h)) + "\" y=\"" + num(py(c.y + 0.5 * f.h)) +
                       "\" width=\"" + num(side) + "\" height=\"" + num(side) + "\" fill=\"" + color + "\"/>");
    }
}

std::string Svg::str() const {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_) +
                  "\" height=\"" + std::to_string(height_) + "\" viewBox=\"0 0 " + std::to_string(width_) +
                  " " + std::to_string(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const std::string& item : items_) s += item + "\n";
  return s + "</svg>\n";
}

void Svg::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << str();
}

}  // namespace subhyp
