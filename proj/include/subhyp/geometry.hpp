#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace subhyp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double euclidean_norm(Point a) { return std::hypot(a.x, a.y); }
inline double uniform_norm(Point a) { return std::max(std::abs(a.x), std::abs(a.y)); }
inline double distance(Point a, Point b) { return euclidean_norm(a - b); }

/// Norm used for distances to the boundary and for cubes. The uniform norm
/// makes cubes Q(x,r) exactly the balls of radius r.
enum class Norm { Uniform, Euclidean };

inline double norm(Point a, Norm n) {
  return n == Norm::Uniform ? uniform_norm(a) : euclidean_norm(a);
}

const char* norm_name(Norm n);
Norm parse_norm(const std::string& s);

struct Box {
  Point lo;
  Point hi;
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  bool contains(Point p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
};

/// Axis-parallel closed cube Q(center, r) = {p : |p - center|_inf <= r}.
struct Cube {
  Point center;
  double radius = 0.0;

  bool contains(Point p) const { return uniform_norm(p - center) <= radius; }
  bool intersects(const Cube& o) const {
    return uniform_norm(center - o.center) <= radius + o.radius;
  }
  Cube dilated(double factor) const { return {center, radius * factor}; }
  double side() const { return 2.0 * radius; }
};

using Polygon = std::vector<Point>;

double signed_area(const Polygon& poly);

/// Distance from p to the closed segment [a,b] in the requested norm.
double point_segment_distance(Point p, Point a, Point b, Norm n);

/// True when the closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(Point a, Point b, Point c, Point d);

/// Bounded planar domain: the interior of `outer` minus the closed holes.
/// Orientation is normalized on construction (outer counterclockwise, holes
/// clockwise). Construction validates simplicity and nesting, which already
/// forces Ω to be connected. A flood fill at `kConnectivityResolution` nodes
/// along the long side counts how many pieces the grid resolves; passages
/// thinner than that spacing show up as extra components.
class PlanarDomain {
 public:
  static constexpr int kConnectivityResolution = 512;

  PlanarDomain(std::string name, Polygon outer, std::vector<Polygon> holes = {});

  const std::string& name() const { return name_; }
  const Polygon& outer() const { return outer_; }
  const std::vector<Polygon>& holes() const { return holes_; }
  const Box& bounding_box() const { return bbox_; }
  double diameter() const { return diameter_; }
  std::size_t segment_count() const { return seg_a_.size(); }
  Point segment_start(std::size_t i) const { return seg_a_[i]; }
  Point segment_end(std::size_t i) const { return seg_b_[i]; }
  int grid_components() const { return grid_components_; }

  /// Open-set membership; points on the boundary are outside.
  bool contains(Point p) const;

  /// Exact distance to the boundary; throws PointOutsideDomain if p is not in
  /// the domain.
  double boundary_distance(Point p, Norm n = Norm::Uniform) const;

  /// Distance from p to the boundary polygon set, for any p.
  double distance_to_boundary_set(Point p, Norm n = Norm::Uniform) const;

  /// True when a and b are inside and the closed segment [a,b] misses the
  /// boundary.
  bool segment_inside(Point a, Point b) const;

  /// Boundary vertices whose turning angle is sharp (reflex or acute), where
  /// extremal pairs of points tend to concentrate.
  std::vector<Point> feature_vertices(double min_turn = 0.785398163397448) const;

  /// Unit tangent of the boundary segment nearest to p.
  Point nearest_boundary_tangent(Point p) const;

  PlanarDomain scaled(double factor) const;

 private:
  void build_index();
  void build_tree();
  void validate() const;
  int count_grid_components() const;
  template <class Fn>
  void for_cells_in_box(Point lo, Point hi, Fn&& fn) const;

  std::string name_;
  Polygon outer_;
  std::vector<Polygon> holes_;
  Box bbox_;
  double diameter_ = 0.0;
  int grid_components_ = 1;

  std::vector<Point> seg_a_;
  std::vector<Point> seg_b_;

  // Uniform bucket grid over the bounding box.
  Point grid_lo_;
  double cell_w_ = 1.0;
  double cell_h_ = 1.0;
  int grid_nx_ = 1;
  int grid_ny_ = 1;
  std::vector<std::vector<int>> cells_;
  std::vector<std::vector<int>> rows_;

  // Bounding-volume hierarchy over segments for nearest-distance queries.
  struct TreeNode {
    Box box;
    int left = -1;
    int right = -1;
    int first = 0;
    int count = 0;
  };
  std::vector<TreeNode> tree_;
  std::vector<int> tree_order_;
};

/// Samples of dist(., boundary) on the grid nodes origin + (i h, j h) spanning
/// the bounding box. Values are exact per node, zero outside the domain.
struct DistanceField {
  Point origin;
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  Norm norm = Norm::Uniform;
  std::vector<double> values;
  std::vector<unsigned char> inside;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(i);
  }
  Point node(int i, int j) const { return {origin.x + i * h, origin.y + j * h}; }
  double value(int i, int j) const { return values[index(i, j)]; }
  bool is_inside(int i, int j) const { return inside[index(i, j)] != 0; }
  std::size_t inside_count() const;
};

/// Throws ResolutionTooCoarse when fewer than `kMinInsideNodes` nodes fall in
/// the domain.
DistanceField build_distance_field(const PlanarDomain& domain, double h,
                                   Norm n = Norm::Uniform);
inline constexpr std::size_t kMinInsideNodes = 9;

struct InscribedBall {
  Point center;
  double radius = 0.0;
  /// diam B' / diam B.
  double ratio = 0.0;
};

/// Best ball B' inside B ∩ Ω over grid candidates of spacing h centered at
/// the center of B. With Norm::Uniform, B and B' are cubes.
InscribedBall largest_inscribed_ball(const PlanarDomain& domain, Point center,
                                     double radius, double h,
                                     Norm n = Norm::Euclidean);

enum class RegularitySampling { AllNodes, InteriorOnly };

struct RegularityEstimate {
  double sigma = 1.0;
  double delta = 0.0;
  Point worst_center;
  double worst_radius = 0.0;
  std::size_t samples = 0;
};

/// max |Q(x,r)| / |Q(x,r) ∩ Ω| over inside grid nodes x and dyadic radii
/// r = h 2^j <= delta/2, by node counting. InteriorOnly skips cubes that leave
/// the bounding box.
RegularityEstimate regularity_constants(
    const PlanarDomain& domain, double h, double delta,
    RegularitySampling sampling = RegularitySampling::AllNodes);

}  // namespace subhyp
