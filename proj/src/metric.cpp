#include "subhyp/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "subhyp/errors.hpp"
#include "subhyp/quadrature.hpp"

namespace subhyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double weight_of(double d, double alpha) {
  if (alpha == 1.0) return 1.0;
  if (d <= 0.0) throw Error(ErrorCode::CurveTouchesBoundary, "quadrature node on the boundary");
  return std::pow(d, alpha - 1.0);
}

// Segment cost used inside the optimizers: Gauss-Legendre on pieces whose
// endpoint distances agree within 25%.
class CostModel {
 public:
  CostModel(const PlanarDomain& domain, double alpha, Norm norm)
      : domain_(domain), alpha_(alpha), norm_(norm) {}

  double dist(Point p) const { return domain_.distance_to_boundary_set(p, norm_); }

  double cost(Point a, Point b, double da, double db, int depth = 14) const {
    const double len = distance(a, b);
    if (len == 0.0) return 0.0;
    if (alpha_ == 1.0) return len;
    const double lo = std::min(da, db), hi = std::max(da, db);
    if (depth > 0 && hi > 1.25 * lo) {
      const Point m = 0.5 * (a + b);
      const double dm = dist(m);
      return cost(a, m, da, dm, depth - 1) + cost(m, b, dm, db, depth - 1);
    }
    const Point d = b - a;
    return len * gauss_legendre5(
                     [&](double s) { return weight_of(dist(a + s * d), alpha_); }, 0.0, 1.0);
  }

  // Optimizer cost: the distance is taken piecewise linear through the
  // midpoint, after splitting until each piece is short against its
  // clearance.
  double quick_cost(Point a, Point b, double da, double db, int depth = 16) const {
    const double len = distance(a, b);
    if (len == 0.0) return 0.0;
    if (alpha_ == 1.0) return len;
    const Point m = 0.5 * (a + b);
    const double dm = dist(m);
    if (depth > 0 && len > 0.5 * std::min(da, db)) {
      return quick_cost(a, m, da, dm, depth - 1) + quick_cost(m, b, dm, db, depth - 1);
    }
    return linear_piece(0.5 * len, da, dm) + linear_piece(0.5 * len, dm, db);
  }

  double linear_piece(double len, double da, double db) const {
    if (da <= 0.0 || db <= 0.0) throw Error(ErrorCode::CurveTouchesBoundary, "segment meets the boundary");
    const double lo = std::min(da, db), hi = std::max(da, db);
    if (hi - lo <= 1e-12 * hi) return len * std::pow(0.5 * (da + db), alpha_ - 1.0);
    return len * (std::pow(hi, alpha_) - std::pow(lo, alpha_)) / (alpha_ * (hi - lo));
  }

  // Grid edges: when the endpoint distances agree within 25% the distance is
  // taken linear along the edge and integrated in closed form.
  double edge_cost(Point a, Point b, double da, double db) const {
    const double lo = std::min(da, db), hi = std::max(da, db);
    if (hi > 1.25 * lo) return cost(a, b, da, db);
    if (alpha_ == 1.0) return distance(a, b);
    return linear_piece(distance(a, b), da, db);
  }

  // Sufficient Lipschitz test first, exact intersection test otherwise.
  bool inside(Point a, Point b, double da, double db) const {
    if (da + db > 1.001 * norm(b - a, norm_)) return true;
    return domain_.segment_inside(a, b);
  }

  const PlanarDomain& domain() const { return domain_; }
  double alpha() const { return alpha_; }

 private:
  const PlanarDomain& domain_;
  double alpha_;
  Norm norm_;
};

struct GridPath {
  bool ok = false;
  double value = kInf;
  std::vector<Point> points;
};

GridPath solve_grid(const CostModel& cm, Point x, Point y, Box window, double h,
                    std::size_t max_nodes) {
  const PlanarDomain& domain = cm.domain();
  const int nx = static_cast<int>(std::floor(window.width() / h)) + 1;
  const int ny = static_cast<int>(std::floor(window.height() / h)) + 1;
  const std::size_t n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  if (n > max_nodes) return {};
  auto node = [&](std::size_t k) {
    return Point{window.lo.x + static_cast<double>(k % nx) * h,
                 window.lo.y + static_cast<double>(k / nx) * h};
  };
  std::vector<double> nd(n, -1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const Point p = node(k);
    if (domain.contains(p)) {
      const double d = cm.dist(p);
      if (d >= 0.5 * h) nd[k] = d;
    }
  }

  GridPath best;
  const double dx = cm.dist(x), dy = cm.dist(y);
  if (cm.inside(x, y, dx, dy)) {
    best.ok = true;
    best.value = cm.cost(x, y, dx, dy);
    best.points = {x, y};
  }

  // Attach an endpoint to valid nodes whose connecting segment stays inside.
  auto attach = [&](Point p, double dp) {
    std::vector<std::pair<std::size_t, double>> out;
    for (int radius : {2, 4, 8}) {
      const int ci = static_cast<int>(std::floor((p.x - window.lo.x) / h));
      const int cj = static_cast<int>(std::floor((p.y - window.lo.y) / h));
      for (int j = cj - radius + 1; j <= cj + radius; ++j)
        for (int i = ci - radius + 1; i <= ci + radius; ++i) {
          if (i < 0 || j < 0 || i >= nx || j >= ny) continue;
          const std::size_t k = static_cast<std::size_t>(j) * nx + i;
          if (nd[k] < 0.0) continue;
          if (!cm.inside(p, node(k), dp, nd[k])) continue;
          out.push_back({k, cm.cost(p, node(k), dp, nd[k])});
        }
      if (!out.empty()) break;
    }
    return out;
  };
  const auto src = attach(x, dx);
  const auto dst = attach(y, dy);
  if (src.empty() || dst.empty()) return best;

  std::vector<double> to_target(n, -1.0);
  for (auto [k, c] : dst) to_target[k] = c;

  std::vector<double> g(n, kInf);
  std::vector<std::size_t> pred(n, n);
  std::vector<unsigned char> done(n, 0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (auto [k, c] : src)
    if (c < g[k]) {
      g[k] = c;
      pq.push({c, k});
    }
  double grid_best = kInf;
  std::size_t grid_end = n;
  const int di[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  const int dj[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  while (!pq.empty()) {
    const auto [gu, u] = pq.top();
    pq.pop();
    if (done[u] || gu > g[u]) continue;
    if (gu >= grid_best) break;
    done[u] = 1;
    if (to_target[u] >= 0.0 && gu + to_target[u] < grid_best) {
      grid_best = gu + to_target[u];
      grid_end = u;
    }
    const int ui = static_cast<int>(u % nx), uj = static_cast<int>(u / nx);
    const Point pu = node(u);
    for (int e = 0; e < 8; ++e) {
      const int vi = ui + di[e], vj = uj + dj[e];
      if (vi < 0 || vj < 0 || vi >= nx || vj >= ny) continue;
      const std::size_t v = static_cast<std::size_t>(vj) * nx + vi;
      if (nd[v] < 0.0 || done[v]) continue;
      const Point pv = node(v);
      if (!cm.inside(pu, pv, nd[u], nd[v])) continue;
      const double gv = gu + cm.edge_cost(pu, pv, nd[u], nd[v]);
      if (gv < g[v] || (gv == g[v] && u < pred[v])) {
        g[v] = gv;
        pred[v] = u;
        pq.push({gv, v});
      }
    }
  }
  if (grid_end == n) return best;
  if (grid_best < best.value || !best.ok) {
    std::vector<Point> pts{y};
    for (std::size_t k = grid_end; k != n; k = pred[k]) pts.push_back(node(k));
    pts.push_back(x);
    std::reverse(pts.begin(), pts.end());
    best.ok = true;
    best.value = grid_best;
    best.points = std::move(pts);
  }
  return best;
}

std::vector<double> distances(const CostModel& cm, const std::vector<Point>& pts) {
  std::vector<double> d(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) d[i] = cm.dist(pts[i]);
  return d;
}

std::vector<Point> shortcut(const CostModel& cm, const std::vector<Point>& pts) {
  if (pts.size() < 3) return pts;
  const auto d = distances(cm, pts);
  std::vector<double> seg(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) seg[i] = cm.quick_cost(pts[i], pts[i + 1], d[i], d[i + 1]);
  std::vector<Point> out{pts.front()};
  std::size_t i = 0;
  const std::size_t last = pts.size() - 1;
  while (i < last) {
    std::size_t next = i + 1;
    const std::size_t far = std::min(last, i + 64);
    double along = 0.0;
    std::vector<double> prefix{0.0};
    for (std::size_t j = i; j < far; ++j) prefix.push_back(prefix.back() + seg[j]);
    for (std::size_t j = far; j > i + 1; --j) {
      along = prefix[j - i];
      if (!cm.inside(pts[i], pts[j], d[i], d[j])) continue;
      if (cm.quick_cost(pts[i], pts[j], d[i], d[j]) <= along) {
        next = j;
        break;
      }
    }
    out.push_back(pts[next]);
    i = next;
  }
  return out;
}

// Segments no longer than max(frac * clearance, length / divisions), with at
// most `cap` vertices.
std::vector<Point> resample(const CostModel& cm, const std::vector<Point>& pts, double frac,
                            double divisions, std::size_t cap) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += distance(pts[i], pts[i + 1]);
  if (total == 0.0) return pts;
  const auto d = distances(cm, pts);
  double floor_step = total / divisions;
  std::vector<Point> out;
  for (int attempt = 0; attempt < 8; ++attempt) {
    out.assign(1, pts.front());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double len = distance(pts[i], pts[i + 1]);
      const double step = std::max(frac * std::min(d[i], d[i + 1]), floor_step);
      const int pieces = std::max(1, static_cast<int>(std::ceil(len / step)));
      for (int k = 1; k <= pieces; ++k)
        out.push_back(pts[i] + (static_cast<double>(k) / pieces) * (pts[i + 1] - pts[i]));
    }
    if (out.size() <= cap) break;
    floor_step *= 2.0;
  }
  return out;
}

void relax(const CostModel& cm, std::vector<Point>& pts, int max_sweeps, double start,
           bool tangential) {
  const std::size_t n = pts.size();
  if (n < 3) return;
  std::vector<double> d = distances(cm, pts);
  std::vector<double> seg(n - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    seg[i] = cm.quick_cost(pts[i], pts[i + 1], d[i], d[i + 1]);
    total += seg[i];
  }
  std::vector<double> step(n, 0.0);
  double scale = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    step[i] = start * std::min({d[i], distance(pts[i], pts[i - 1]), distance(pts[i], pts[i + 1])});
    scale = std::max(scale, distance(pts[i], pts.front()));
  }
  const double min_step = 1e-7 * std::max(scale, distance(pts.front(), pts.back()));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double gained = 0.0;
    bool active = false;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (step[i] < min_step) continue;
      active = true;
      const Point a = pts[i - 1], b = pts[i + 1], p = pts[i];
      const Point chord = b - a;
      const double cl = euclidean_norm(chord);
      const Point t = cl > 0.0 ? (1.0 / cl) * chord : Point{1.0, 0.0};
      const Point nrm{-t.y, t.x};
      const double current = seg[i - 1] + seg[i];
      double best = current, best_d = d[i], best_l = 0.0, best_r = 0.0;
      Point best_p = p;
      const Point dirs[4] = {nrm, -1.0 * nrm, t, -1.0 * t};
      for (int k = 0; k < (tangential ? 4 : 2); ++k) {
        const Point dir = dirs[k];
        const Point q = p + step[i] * dir;
        if (!cm.domain().contains(q)) continue;
        const double dq = cm.dist(q);
        if (dq <= 0.0) continue;
        if (!cm.inside(a, q, d[i - 1], dq) || !cm.inside(q, b, dq, d[i + 1])) continue;
        const double l = cm.quick_cost(a, q, d[i - 1], dq);
        if (l >= best) continue;
        const double r = cm.quick_cost(q, b, dq, d[i + 1]);
        if (l + r < best) {
          best = l + r;
          best_p = q;
          best_d = dq;
          best_l = l;
          best_r = r;
        }
      }
      if (best < current) {
        pts[i] = best_p;
        d[i] = best_d;
        seg[i - 1] = best_l;
        seg[i] = best_r;
        gained += current - best;
      } else {
        step[i] *= 0.5;
      }
    }
    total -= gained;
    if (!active || gained < 1e-8 * total) break;
  }
}

std::vector<Point> optimize_path(const CostModel& cm, const std::vector<Point>& pts, bool fine) {
  // Coarse to fine: relax a sparse polyline first, then subdivide.
  auto out = shortcut(cm, pts);
  out = resample(cm, out, 0.5, 24.0, 64);
  relax(cm, out, 60, 0.25, true);
  if (!fine) return out;
  out = resample(cm, out, 0.25, 96.0, 192);
  relax(cm, out, 20, 0.1, true);
  return out;
}

Box clip(Box b, const Box& to) {
  return {{std::max(b.lo.x, to.lo.x), std::max(b.lo.y, to.lo.y)},
          {std::min(b.hi.x, to.hi.x), std::min(b.hi.y, to.hi.y)}};
}

struct Level {
  bool ok = false;
  double value = kInf;
  std::vector<Point> points;
};

Level run_level(const CostModel& cm, Point x, Point y, const Box& window, double h,
                const MetricOptions& opts) {
  GridPath gp = solve_grid(cm, x, y, window, h, opts.max_nodes);
  if (!gp.ok) return {};
  std::vector<Point> pts = gp.points;
  if (opts.optimize) pts = optimize_path(cm, pts, opts.fine);
  const ParamCurve c = ParamCurve::from_points(cm.domain(), pts, opts.norm);
  return {true, weighted_length(c, cm.alpha(), cm.domain()), std::move(pts)};
}

}  // namespace

ParamCurve ParamCurve::from_points(const PlanarDomain& domain, std::vector<Point> pts, Norm norm) {
  if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "empty curve");
  ParamCurve c;
  c.norm = norm;
  c.vertices = std::move(pts);
  c.arclength.resize(c.vertices.size(), 0.0);
  c.weight.resize(c.vertices.size(), 0.0);
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    if (i > 0) c.arclength[i] = c.arclength[i - 1] + distance(c.vertices[i - 1], c.vertices[i]);
    c.weight[i] = domain.boundary_distance(c.vertices[i], norm);
  }
  return c;
}

std::size_t ParamCurve::segment_at(double t) const {
  if (vertices.size() < 2) return 0;
  auto it = std::upper_bound(arclength.begin(), arclength.end(), t);
  std::size_t i = it == arclength.begin() ? 0 : static_cast<std::size_t>(it - arclength.begin()) - 1;
  return std::min(i, vertices.size() - 2);
}

Point ParamCurve::at(double t) const {
  if (vertices.size() == 1) return vertices.front();
  t = std::clamp(t, 0.0, length());
  const std::size_t i = segment_at(t);
  const double span = arclength[i + 1] - arclength[i];
  const double u = span > 0.0 ? (t - arclength[i]) / span : 0.0;
  return vertices[i] + u * (vertices[i + 1] - vertices[i]);
}

ParamCurve ParamCurve::resampled(const PlanarDomain& domain, double max_step) const {
  if (!(max_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  std::vector<Point> pts{vertices.front()};
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const double len = arclength[i + 1] - arclength[i];
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / max_step)));
    for (int k = 1; k <= pieces; ++k)
      pts.push_back(vertices[i] + (static_cast<double>(k) / pieces) * (vertices[i + 1] - vertices[i]));
  }
  return from_points(domain, std::move(pts), norm);
}

double segment_weighted_length(const PlanarDomain& domain, Point a, Point b, double alpha,
                               Norm norm, double rel_tol) {
  const double len = distance(a, b);
  if (alpha == 1.0 || len == 0.0) return len;
  const Point d = b - a;
  auto f = [&](double s) { return weight_of(domain.distance_to_boundary_set(a + s * d, norm), alpha); };
  return len * adaptive_integrate(f, 0.0, 1.0, rel_tol);
}

double weighted_length(const ParamCurve& curve, double alpha, const PlanarDomain& domain,
                       double rel_tol) {
  return weighted_prefix(curve, alpha, domain, rel_tol).back();
}

std::vector<double> weighted_prefix(const ParamCurve& curve, double beta,
                                    const PlanarDomain& domain, double rel_tol) {
  if (!(beta > 0.0) || beta > 1.0) throw Error(ErrorCode::BadExponent, "exponent must lie in (0,1]");
  std::vector<double> out(curve.size(), 0.0);
  for (std::size_t i = 0; i + 1 < curve.size(); ++i)
    out[i + 1] = out[i] + segment_weighted_length(domain, curve.vertices[i], curve.vertices[i + 1],
                                                  beta, curve.norm, rel_tol);
  return out;
}

GeodesicResult subhyp_distance(const PlanarDomain& domain, double alpha, Point x, Point y,
                               const MetricOptions& opts) {
  if (!(alpha > 0.0) || alpha > 1.0) throw Error(ErrorCode::BadExponent, "alpha must lie in (0,1]");
  if (!domain.contains(x) || !domain.contains(y))
    throw Error(ErrorCode::PointOutsideDomain, "endpoint not in " + domain.name());
  const CostModel cm(domain, alpha, opts.norm);
  GeodesicResult res;
  res.alpha = alpha;
  if (x == y) {
    res.curve = ParamCurve::from_points(domain, {x}, opts.norm);
    return res;
  }
  const Box& bb = domain.bounding_box();
  const double sep = distance(x, y);

  Box window = bb;
  double h = opts.h > 0.0 ? opts.h : domain.diameter() / 128.0;
  if (opts.local) {
    // Grow the window until the pair connects inside it.
    double half = 2.0 * sep;
    h = opts.h > 0.0 ? opts.h : sep / 16.0;
    const Point mid = 0.5 * (x + y);
    for (;;) {
      window = clip({{mid.x - half, mid.y - half}, {mid.x + half, mid.y + half}}, bb);
      const bool whole = window.lo == bb.lo && window.hi == bb.hi;
      if (solve_grid(cm, x, y, window, h, opts.max_nodes).ok) {
        if (!whole) {
          // One wider window can reveal a cheaper route class.
          const Box wide = clip({{mid.x - 2 * half, mid.y - 2 * half}, {mid.x + 2 * half, mid.y + 2 * half}}, bb);
          const GridPath a = solve_grid(cm, x, y, window, h, opts.max_nodes);
          const GridPath b = solve_grid(cm, x, y, wide, 2.0 * h, opts.max_nodes);
          if (b.ok && b.value < 0.99 * a.value) {
            window = wide;
            h *= 2.0;
          }
        }
        break;
      }
      if (!whole) {
        half *= 2.0;
        h *= 2.0;
      } else {
        h *= 0.5;
        const double cells = (window.width() / h + 1) * (window.height() / h + 1);
        if (cells > static_cast<double>(opts.max_nodes))
          throw Error(ErrorCode::Disconnected, "no grid path between the endpoints");
      }
    }
  }

  double prev = kInf;
  bool have_prev = false;
  std::vector<Point> best_pts;
  double best = kInf;
  double gap = kInf;
  int levels = 0;
  for (int level = 0; level < opts.max_levels; ++level) {
    const double cells = (window.width() / h + 1) * (window.height() / h + 1);
    if (cells > static_cast<double>(opts.max_nodes)) break;
    const Level lv = run_level(cm, x, y, window, h, opts);
    res.h = h;
    ++levels;
    h *= 0.5;
    if (!lv.ok) continue;
    res.history.push_back(lv.value);
    if (lv.value < best) {
      best = lv.value;
      best_pts = lv.points;
    }
    if (have_prev) {
      gap = std::abs(lv.value - prev);
      const double target = opts.slack > 0.0 ? opts.slack : opts.tol * lv.value;
      if (gap <= target) break;
    }
    prev = lv.value;
    have_prev = true;
  }
  if (best_pts.empty()) throw Error(ErrorCode::Disconnected, "no grid path between the endpoints");
  res.levels = levels;
  res.curve = ParamCurve::from_points(domain, std::move(best_pts), opts.norm);
  res.value = weighted_length(res.curve, alpha, domain);
  res.gap = have_prev && res.history.size() > 1 ? gap : kInf;
  return res;
}

ParamCurve near_geodesic(const PlanarDomain& domain, double alpha, Point x, Point y, double delta,
                         MetricOptions opts) {
  if (!(delta > 0.0))
    throw Error(ErrorCode::SlackUnreachable, "slack must be positive; the infimum need not be attained");
  opts.slack = delta;
  opts.max_nodes = std::size_t{4096} * 4096;
  opts.max_levels = std::max(opts.max_levels, 12);
  const GeodesicResult r = subhyp_distance(domain, alpha, x, y, opts);
  if (!(r.gap <= delta))
    throw Error(ErrorCode::SlackUnreachable, "refinement budget exhausted", r.gap);
  return r.curve;
}

double measured_constant(const ParamCurve& curve, const PlanarDomain& domain, double alpha) {
  const double sep = distance(curve.front(), curve.back());
  if (sep == 0.0) throw Error(ErrorCode::InvalidArgument, "curve endpoints coincide");
  return weighted_length(curve, alpha, domain) / std::pow(sep, alpha);
}

LengthBoundReport check_length_bound(const ParamCurve& curve, const PlanarDomain& domain,
                                     double alpha, double C) {
  LengthBoundReport r;
  r.separation = distance(curve.front(), curve.back());
  const double reach = std::max(curve.weight.front(), curve.weight.back());
  if (reach > 2.0 * r.separation)
    throw Error(ErrorCode::PreconditionNotMet, "endpoints are far from the boundary; use the segment case");
  (void)domain;
  r.length = curve.length();
  r.constant = C;
  r.bound = 2.0 * std::exp(C) * r.separation;
  r.sharp_bound = std::pow(alpha * C + std::pow(2.0, alpha), 1.0 / alpha) * r.separation;
  r.holds = r.length <= r.bound;
  r.sharp_holds = r.length <= r.sharp_bound;
  return r;
}

SegmentCaseReport check_segment_case(const PlanarDomain& domain, Point x, Point y, double beta,
                                     Norm norm) {
  const double sep = distance(x, y);
  const double reach = std::max(domain.boundary_distance(x, norm), domain.boundary_distance(y, norm));
  if (!(reach > 2.0 * sep))
    throw Error(ErrorCode::PreconditionNotMet, "an endpoint must be farther than 2|x-y| from the boundary");
  SegmentCaseReport r;
  r.segment_inside = domain.segment_inside(x, y);
  r.weighted = segment_weighted_length(domain, x, y, beta, norm);
  r.bound = std::pow(sep, beta);
  r.holds = r.segment_inside && r.weighted <= r.bound * (1.0 + 1e-9);
  return r;
}

A1Report check_a1_property(const ParamCurve& curve, const PlanarDomain& domain, double alpha,
                           double C) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::BadExponent, "alpha must lie in (0,1)");
  A1Report r;
  r.length = curve.length();
  if (r.length == 0.0) throw Error(ErrorCode::InvalidArgument, "curve has zero length");
  r.weighted = weighted_length(curve, alpha, domain);
  r.minimal_C = r.weighted / std::pow(r.length, alpha);
  if (r.minimal_C > C * (1.0 + 1e-12))
    throw Error(ErrorCode::HypothesisFails, "len_a exceeds C lng^a", r.minimal_C);
  const auto top = std::max_element(curve.weight.begin(), curve.weight.end());
  r.zbar = curve.vertices[static_cast<std::size_t>(top - curve.weight.begin())];
  r.zbar_distance = *top;
  r.part_i_bound = std::pow(C, 1.0 / (1.0 - alpha)) * r.zbar_distance;
  r.part_i = r.length <= r.part_i_bound;
  r.mean = r.weighted / r.length;
  r.inf_weight = std::pow(r.zbar_distance, alpha - 1.0);
  r.part_ii = r.mean <= 2.0 * C * r.inf_weight;
  return r;
}

}  // namespace subhyp
