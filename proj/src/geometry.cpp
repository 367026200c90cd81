#include "subhyp/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "subhyp/errors.hpp"
#include "subhyp/parallel.hpp"

namespace subhyp {

const char* norm_name(Norm n) { return n == Norm::Uniform ? "uniform" : "euclidean"; }

Norm parse_norm(const std::string& s) {
  if (s == "uniform" || s == "inf" || s == "linf") return Norm::Uniform;
  if (s == "euclidean" || s == "l2") return Norm::Euclidean;
  throw Error(ErrorCode::InvalidArgument, "unknown norm '" + s + "'");
}

double signed_area(const Polygon& poly) {
  double a = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

double point_segment_distance(Point p, Point a, Point b, Norm n) {
  const Point d = b - a;
  const Point u = p - a;
  if (n == Norm::Euclidean) {
    const double len2 = dot(d, d);
    double t = len2 > 0.0 ? dot(u, d) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return euclidean_norm(u - t * d);
  }
  // max(|ux - t dx|, |uy - t dy|) is convex and piecewise linear in t; its
  // minimum sits at an endpoint or a breakpoint.
  std::array<double, 6> cand{0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  int nc = 2;
  if (d.x != 0.0) cand[nc++] = u.x / d.x;
  if (d.y != 0.0) cand[nc++] = u.y / d.y;
  if (d.x - d.y != 0.0) cand[nc++] = (u.x - u.y) / (d.x - d.y);
  if (d.x + d.y != 0.0) cand[nc++] = (u.x + u.y) / (d.x + d.y);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nc; ++i) {
    const double t = std::clamp(cand[i], 0.0, 1.0);
    best = std::min(best, uniform_norm(u - t * d));
  }
  return best;
}

namespace {

int orientation_sign(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool ring_contains(const Polygon& ring, Point p) {
  bool in = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = ring[j];
    const Point b = ring[i];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (xi > p.x) in = !in;
    }
  }
  return in;
}

}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = orientation_sign(a, b, c);
  const int o2 = orientation_sign(a, b, d);
  const int o3 = orientation_sign(c, d, a);
  const int o4 = orientation_sign(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

PlanarDomain::PlanarDomain(std::string name, Polygon outer, std::vector<Polygon> holes)
    : name_(std::move(name)), outer_(std::move(outer)), holes_(std::move(holes)) {
  auto drop_closing = [](Polygon& ring) {
    if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  };
  drop_closing(outer_);
  for (auto& h : holes_) drop_closing(h);
  if (outer_.size() < 3) throw Error(ErrorCode::InvalidDomain, "outer polygon needs 3+ vertices");
  for (const auto& h : holes_)
    if (h.size() < 3) throw Error(ErrorCode::InvalidDomain, "hole needs 3+ vertices");
  if (signed_area(outer_) < 0.0) std::reverse(outer_.begin(), outer_.end());
  for (auto& h : holes_)
    if (signed_area(h) > 0.0) std::reverse(h.begin(), h.end());

  bbox_ = {outer_.front(), outer_.front()};
  for (Point p : outer_) {
    bbox_.lo.x = std::min(bbox_.lo.x, p.x);
    bbox_.lo.y = std::min(bbox_.lo.y, p.y);
    bbox_.hi.x = std::max(bbox_.hi.x, p.x);
    bbox_.hi.y = std::max(bbox_.hi.y, p.y);
  }
  // Vertices of the outer ring realize the diameter of the closure.
  for (std::size_t i = 0; i < outer_.size(); ++i)
    for (std::size_t j = i + 1; j < outer_.size(); ++j)
      diameter_ = std::max(diameter_, distance(outer_[i], outer_[j]));

  auto add_ring = [this](const Polygon& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      seg_a_.push_back(ring[i]);
      seg_b_.push_back(ring[(i + 1) % ring.size()]);
    }
  };
  add_ring(outer_);
  for (const auto& h : holes_) add_ring(h);
  build_index();
  build_tree();
  validate();
  grid_components_ = count_grid_components();
}

void PlanarDomain::build_index() {
  const double pad = 1e-9 * std::max(1.0, std::max(bbox_.width(), bbox_.height()));
  grid_lo_ = {bbox_.lo.x - pad, bbox_.lo.y - pad};
  const double w = bbox_.width() + 2 * pad;
  const double h = bbox_.height() + 2 * pad;
  const double n = static_cast<double>(seg_a_.size());
  const int target = std::clamp(static_cast<int>(std::ceil(2.0 * std::sqrt(n))), 1, 256);
  const double cs = std::max(w, h) / target;
  grid_nx_ = std::max(1, static_cast<int>(std::ceil(w / cs)));
  grid_ny_ = std::max(1, static_cast<int>(std::ceil(h / cs)));
  cell_w_ = w / grid_nx_;
  cell_h_ = h / grid_ny_;
  cells_.assign(static_cast<std::size_t>(grid_nx_) * grid_ny_, {});
  rows_.assign(grid_ny_, {});
  for (std::size_t s = 0; s < seg_a_.size(); ++s) {
    const Point a = seg_a_[s], b = seg_b_[s];
    const Point lo{std::min(a.x, b.x), std::min(a.y, b.y)};
    const Point hi{std::max(a.x, b.x), std::max(a.y, b.y)};
    const int j0 = std::clamp(static_cast<int>((lo.y - grid_lo_.y) / cell_h_), 0, grid_ny_ - 1);
    const int j1 = std::clamp(static_cast<int>((hi.y - grid_lo_.y) / cell_h_), 0, grid_ny_ - 1);
    for (int j = j0; j <= j1; ++j) rows_[j].push_back(static_cast<int>(s));
    // Register only cells the segment actually crosses.
    const int i0 = std::clamp(static_cast<int>((lo.x - grid_lo_.x) / cell_w_), 0, grid_nx_ - 1);
    const int i1 = std::clamp(static_cast<int>((hi.x - grid_lo_.x) / cell_w_), 0, grid_nx_ - 1);
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) {
        const Point c0{grid_lo_.x + i * cell_w_, grid_lo_.y + j * cell_h_};
        const Point c1{c0.x + cell_w_, c0.y + cell_h_};
        const Point mid{0.5 * (c0.x + c1.x), 0.5 * (c0.y + c1.y)};
        const double half = 0.5 * std::max(cell_w_, cell_h_) * (1.0 + 1e-9);
        if (point_segment_distance(mid, a, b, Norm::Uniform) <= half)
          cells_[static_cast<std::size_t>(j) * grid_nx_ + i].push_back(static_cast<int>(s));
      }
    }
  }
}

template <class Fn>
void PlanarDomain::for_cells_in_box(Point lo, Point hi, Fn&& fn) const {
  const int i0 = std::clamp(static_cast<int>(std::floor((lo.x - grid_lo_.x) / cell_w_)), 0, grid_nx_ - 1);
  const int i1 = std::clamp(static_cast<int>(std::floor((hi.x - grid_lo_.x) / cell_w_)), 0, grid_nx_ - 1);
  const int j0 = std::clamp(static_cast<int>(std::floor((lo.y - grid_lo_.y) / cell_h_)), 0, grid_ny_ - 1);
  const int j1 = std::clamp(static_cast<int>(std::floor((hi.y - grid_lo_.y) / cell_h_)), 0, grid_ny_ - 1);
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i)
      if (!fn(cells_[static_cast<std::size_t>(j) * grid_nx_ + i])) return;
}

void PlanarDomain::validate() const {
  // Simplicity of every ring and disjointness of rings: no two non-adjacent
  // boundary segments may meet.
  std::vector<std::size_t> ring_of(seg_a_.size());
  std::vector<std::size_t> ring_size;
  ring_size.push_back(outer_.size());
  for (const auto& h : holes_) ring_size.push_back(h.size());
  {
    std::size_t s = 0;
    for (std::size_t r = 0; r < ring_size.size(); ++r)
      for (std::size_t k = 0; k < ring_size[r]; ++k) ring_of[s++] = r;
  }
  std::vector<std::size_t> ring_start(ring_size.size(), 0);
  for (std::size_t r = 1; r < ring_size.size(); ++r)
    ring_start[r] = ring_start[r - 1] + ring_size[r - 1];

  auto adjacent = [&](std::size_t s, std::size_t t) {
    if (ring_of[s] != ring_of[t]) return false;
    const std::size_t n = ring_size[ring_of[s]];
    const std::size_t ls = s - ring_start[ring_of[s]];
    const std::size_t lt = t - ring_start[ring_of[t]];
    return (ls + 1) % n == lt || (lt + 1) % n == ls;
  };
  for (std::size_t s = 0; s < seg_a_.size(); ++s) {
    const Point a = seg_a_[s], b = seg_b_[s];
    if (a == b) throw Error(ErrorCode::InvalidDomain, "repeated vertex in " + name_);
    const Point lo{std::min(a.x, b.x), std::min(a.y, b.y)};
    const Point hi{std::max(a.x, b.x), std::max(a.y, b.y)};
    bool bad = false;
    for_cells_in_box(lo, hi, [&](const std::vector<int>& cell) {
      for (int t : cell) {
        const auto tu = static_cast<std::size_t>(t);
        if (tu <= s || adjacent(s, tu)) continue;
        if (segments_intersect(a, b, seg_a_[tu], seg_b_[tu])) {
          bad = true;
          return false;
        }
      }
      return true;
    });
    if (bad) throw Error(ErrorCode::InvalidDomain, "boundary of " + name_ + " self-intersects");
  }
  for (const auto& h : holes_) {
    if (!ring_contains(outer_, h.front()))
      throw Error(ErrorCode::InvalidDomain, "hole outside outer polygon in " + name_);
    for (const auto& g : holes_)
      if (&g != &h && ring_contains(g, h.front()))
        throw Error(ErrorCode::InvalidDomain, "nested holes in " + name_);
  }
}

int PlanarDomain::count_grid_components() const {
  const double span = std::max(bbox_.width(), bbox_.height());
  const double h = span / kConnectivityResolution;
  const int nx = static_cast<int>(std::floor(bbox_.width() / h)) + 1;
  const int ny = static_cast<int>(std::floor(bbox_.height() / h)) + 1;
  std::vector<unsigned char> in(static_cast<std::size_t>(nx) * ny, 0);
  parallel_for(static_cast<std::size_t>(ny), [&](std::size_t j) {
    for (int i = 0; i < nx; ++i)
      in[j * nx + i] = contains({bbox_.lo.x + i * h, bbox_.lo.y + static_cast<double>(j) * h}) ? 1 : 0;
  });
  std::vector<unsigned char> seen(in.size(), 0);
  std::queue<std::size_t> q;
  int components = 0;
  for (std::size_t seed = 0; seed < in.size(); ++seed) {
    if (!in[seed] || seen[seed]) continue;
    ++components;
    q.push(seed);
    seen[seed] = 1;
    while (!q.empty()) {
      const std::size_t k = q.front();
      q.pop();
      const int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int a = i + di[d], b = j + dj[d];
        if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
        const std::size_t kk = static_cast<std::size_t>(b) * nx + a;
        if (in[kk] && !seen[kk]) {
          seen[kk] = 1;
          q.push(kk);
        }
      }
    }
  }
  return components;
}

bool PlanarDomain::contains(Point p) const {
  if (!(p.x > bbox_.lo.x && p.x < bbox_.hi.x && p.y > bbox_.lo.y && p.y < bbox_.hi.y))
    return false;
  const int j = std::clamp(static_cast<int>((p.y - grid_lo_.y) / cell_h_), 0, grid_ny_ - 1);
  bool in = false;
  for (int s : rows_[j]) {
    const Point a = seg_a_[s], b = seg_b_[s];
    if (cross(b - a, p - a) == 0.0 && on_segment(a, b, p)) return false;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (xi > p.x) in = !in;
    }
  }
  return in;
}

void PlanarDomain::build_tree() {
  std::vector<int> order(seg_a_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  tree_.clear();
  tree_order_.clear();
  // Median split on the longer box side; leaves hold up to four segments.
  auto build = [&](auto&& self, int begin, int end) -> int {
    TreeNode node;
    node.box = {seg_a_[order[begin]], seg_a_[order[begin]]};
    for (int k = begin; k < end; ++k) {
      for (Point q : {seg_a_[order[k]], seg_b_[order[k]]}) {
        node.box.lo.x = std::min(node.box.lo.x, q.x);
        node.box.lo.y = std::min(node.box.lo.y, q.y);
        node.box.hi.x = std::max(node.box.hi.x, q.x);
        node.box.hi.y = std::max(node.box.hi.y, q.y);
      }
    }
    const int id = static_cast<int>(tree_.size());
    tree_.push_back(node);
    if (end - begin <= 4) {
      tree_[id].first = static_cast<int>(tree_order_.size());
      for (int k = begin; k < end; ++k) tree_order_.push_back(order[k]);
      tree_[id].count = end - begin;
      return id;
    }
    const bool by_x = node.box.width() >= node.box.height();
    const int mid = (begin + end) / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                     [&](int u, int v) {
                       const Point cu = seg_a_[u] + seg_b_[u], cv = seg_a_[v] + seg_b_[v];
                       return by_x ? cu.x < cv.x : cu.y < cv.y;
                     });
    const int left = self(self, begin, mid);
    const int right = self(self, mid, end);
    tree_[id].left = left;
    tree_[id].right = right;
    return id;
  };
  build(build, 0, static_cast<int>(order.size()));
}

double PlanarDomain::distance_to_boundary_set(Point p, Norm n) const {
  auto box_distance = [&](const Box& b) {
    const double dx = std::max({b.lo.x - p.x, 0.0, p.x - b.hi.x});
    const double dy = std::max({b.lo.y - p.y, 0.0, p.y - b.hi.y});
    return n == Norm::Uniform ? std::max(dx, dy) : std::hypot(dx, dy);
  };
  double best = std::numeric_limits<double>::infinity();
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const TreeNode& node = tree_[stack[--top]];
    if (box_distance(node.box) >= best) continue;
    if (node.count > 0) {
      for (int k = node.first; k < node.first + node.count; ++k) {
        const int s = tree_order_[k];
        best = std::min(best, point_segment_distance(p, seg_a_[s], seg_b_[s], n));
      }
      continue;
    }
    // Visit the nearer child first.
    const double dl = box_distance(tree_[node.left].box);
    const double dr = box_distance(tree_[node.right].box);
    if (dl <= dr) {
      stack[top++] = node.right;
      stack[top++] = node.left;
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  return best;
}

double PlanarDomain::boundary_distance(Point p, Norm n) const {
  if (!contains(p)) throw Error(ErrorCode::PointOutsideDomain, "point is not in " + name_);
  return distance_to_boundary_set(p, n);
}

bool PlanarDomain::segment_inside(Point a, Point b) const {
  if (!contains(a) || !contains(b)) return false;
  const Point lo{std::min(a.x, b.x), std::min(a.y, b.y)};
  const Point hi{std::max(a.x, b.x), std::max(a.y, b.y)};
  bool hit = false;
  for_cells_in_box(lo, hi, [&](const std::vector<int>& cell) {
    for (int s : cell)
      if (segments_intersect(a, b, seg_a_[s], seg_b_[s])) {
        hit = true;
        return false;
      }
    return true;
  });
  return !hit;
}

std::vector<Point> PlanarDomain::feature_vertices(double min_turn) const {
  std::vector<Point> out;
  auto scan = [&](const Polygon& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point prev = ring[(i + n - 1) % n], cur = ring[i], next = ring[(i + 1) % n];
      const Point u = cur - prev, v = next - cur;
      const double turn = std::atan2(cross(u, v), dot(u, v));
      if (std::abs(turn) >= min_turn) out.push_back(cur);
    }
  };
  scan(outer_);
  for (const auto& h : holes_) scan(h);
  return out;
}

Point PlanarDomain::nearest_boundary_tangent(Point p) const {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t s = 0; s < seg_a_.size(); ++s) {
    const double d = point_segment_distance(p, seg_a_[s], seg_b_[s], Norm::Euclidean);
    if (d < best) {
      best = d;
      arg = s;
    }
  }
  const Point t = seg_b_[arg] - seg_a_[arg];
  return (1.0 / euclidean_norm(t)) * t;
}

PlanarDomain PlanarDomain::scaled(double factor) const {
  auto scale = [factor](Polygon ring) {
    for (auto& p : ring) p = factor * p;
    return ring;
  };
  std::vector<Polygon> holes;
  for (const auto& h : holes_) holes.push_back(scale(h));
  return PlanarDomain(name_, scale(outer_), std::move(holes));
}

std::size_t DistanceField::inside_count() const {
  return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), 1));
}

DistanceField build_distance_field(const PlanarDomain& domain, double h, Norm n) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  const Box& bb = domain.bounding_box();
  DistanceField f;
  f.origin = bb.lo;
  f.h = h;
  f.norm = n;
  f.nx = static_cast<int>(std::floor(bb.width() / h + 1e-9)) + 1;
  f.ny = static_cast<int>(std::floor(bb.height() / h + 1e-9)) + 1;
  f.values.assign(static_cast<std::size_t>(f.nx) * f.ny, 0.0);
  f.inside.assign(f.values.size(), 0);
  parallel_for(static_cast<std::size_t>(f.ny), [&](std::size_t j) {
    for (int i = 0; i < f.nx; ++i) {
      const Point p = f.node(i, static_cast<int>(j));
      if (domain.contains(p)) {
        const std::size_t k = f.index(i, static_cast<int>(j));
        f.inside[k] = 1;
        f.values[k] = domain.distance_to_boundary_set(p, n);
      }
    }
  });
  if (f.inside_count() < kMinInsideNodes)
    throw Error(ErrorCode::ResolutionTooCoarse,
                "only " + std::to_string(f.inside_count()) + " grid nodes inside " + domain.name());
  return f;
}

InscribedBall largest_inscribed_ball(const PlanarDomain& domain, Point center, double radius,
                                     double h, Norm n) {
  if (!(radius > 0.0) || !(h > 0.0))
    throw Error(ErrorCode::InvalidArgument, "radius and spacing must be positive");
  InscribedBall best{center, 0.0, 0.0};
  const int steps = static_cast<int>(std::floor(radius / h));
  for (int j = -steps; j <= steps; ++j) {
    for (int i = -steps; i <= steps; ++i) {
      const Point c{center.x + i * h, center.y + j * h};
      const double to_edge = radius - norm(c - center, n);
      if (to_edge <= best.radius) continue;
      if (!domain.contains(c)) continue;
      const double r = std::min(to_edge, domain.distance_to_boundary_set(c, n));
      if (r > best.radius) best = {c, r, 0.0};
    }
  }
  best.ratio = best.radius / radius;
  return best;
}

RegularityEstimate regularity_constants(const PlanarDomain& domain, double h, double delta,
                                        RegularitySampling sampling) {
  if (!(delta > 0.0) || !(h > 0.0))
    throw Error(ErrorCode::InvalidArgument, "delta and spacing must be positive");
  const Box& bb = domain.bounding_box();
  const int nx = static_cast<int>(std::floor(bb.width() / h + 1e-9)) + 1;
  const int ny = static_cast<int>(std::floor(bb.height() / h + 1e-9)) + 1;
  std::vector<unsigned char> in(static_cast<std::size_t>(nx) * ny, 0);
  parallel_for(static_cast<std::size_t>(ny), [&](std::size_t j) {
    for (int i = 0; i < nx; ++i)
      in[j * nx + i] = domain.contains({bb.lo.x + i * h, bb.lo.y + static_cast<double>(j) * h});
  });
  // Summed-area table of the inside mask.
  std::vector<long> sat(static_cast<std::size_t>(nx + 1) * (ny + 1), 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      sat[(j + 1) * (nx + 1) + i + 1] = in[j * nx + i] + sat[j * (nx + 1) + i + 1] +
                                        sat[(j + 1) * (nx + 1) + i] - sat[j * (nx + 1) + i];
  auto count = [&](int i0, int j0, int i1, int j1) {
    i0 = std::max(i0, 0);
    j0 = std::max(j0, 0);
    i1 = std::min(i1, nx - 1);
    j1 = std::min(j1, ny - 1);
    if (i0 > i1 || j0 > j1) return 0L;
    return sat[(j1 + 1) * (nx + 1) + i1 + 1] - sat[j0 * (nx + 1) + i1 + 1] -
           sat[(j1 + 1) * (nx + 1) + i0] + sat[j0 * (nx + 1) + i0];
  };
  RegularityEstimate est;
  est.delta = delta;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!in[j * nx + i]) continue;
      for (int s = 0;; ++s) {
        const double r = h * std::ldexp(1.0, s);
        if (r > 0.5 * delta) break;
        const int k = static_cast<int>(std::floor(r / h + 1e-9));
        if (sampling == RegularitySampling::InteriorOnly &&
            (i - k < 1 || j - k < 1 || i + k > nx - 2 || j + k > ny - 2))
          continue;
        const double total = static_cast<double>((2 * k + 1) * (2 * k + 1));
        const double inside = static_cast<double>(count(i - k, j - k, i + k, j + k));
        ++est.samples;
        const double ratio = total / inside;
        if (ratio > est.sigma) {
          est.sigma = ratio;
          est.worst_center = {bb.lo.x + i * h, bb.lo.y + j * h};
          est.worst_radius = r;
        }
      }
    }
  }
  return est;
}

}  // namespace subhyp
