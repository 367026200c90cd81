#pragma once

#include <string>
#include <vector>

#include "subhyp/geometry.hpp"
#include "subhyp/sharpmax.hpp"

namespace subhyp {

/// Static figure in domain coordinates, y pointing up.
class Svg {
 public:
  explicit Svg(Box view, int width_px = 640);

  void domain(const PlanarDomain& d, const std::string& stroke = "#222");
  void polyline(const std::vector<Point>& pts, const std::string& stroke, double width_px = 1.5);
  void cube(const Cube& q, const std::string& stroke, double opacity = 0.6);
  void point(Point p, const std::string& fill, double radius_px = 3.0);
  /// Grayscale cells scaled to [0, max]; cells outside the domain are skipped.
  void field(const ScalarField& f);

  std::string str() const;
  void save(const std::string& path) const;

 private:
  double px(double x) const;
  double py(double y) const;

  Box view_;
  double scale_;
  int width_;
  int height_;
  std::vector<std::string> items_;
};

}  // namespace subhyp
