#include "subhyp/chains.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "subhyp/errors.hpp"

namespace subhyp {

namespace {

double clearance(const PlanarDomain& domain, Point p) {
  if (!domain.contains(p)) throw Error(ErrorCode::ClearanceZero, "curve leaves the domain");
  const double d = domain.distance_to_boundary_set(p, Norm::Uniform);
  if (!(d > 0.0)) throw Error(ErrorCode::ClearanceZero, "curve touches the boundary");
  return d;
}

Box box_of(const Cube& q) {
  return {{q.center.x - q.radius, q.center.y - q.radius}, {q.center.x + q.radius, q.center.y + q.radius}};
}

}  // namespace

CubeChain build_chain(const PlanarDomain& domain, const ParamCurve& curve) {
  if (curve.size() < 1) throw Error(ErrorCode::InvalidArgument, "empty curve");
  CubeChain chain;
  chain.curve = curve;
  chain.x = curve.front();
  chain.y = curve.back();

  for (std::size_t i = 0; i + 1 < curve.size(); ++i)
    if (!domain.segment_inside(curve.vertices[i], curve.vertices[i + 1]))
      throw Error(ErrorCode::ClearanceZero, "curve meets the boundary");
  if (curve.size() == 1) clearance(domain, curve.front());

  std::vector<Cube> kept;
  std::vector<double> kept_at;
  const double L = curve.length();
  double t = 0.0;
  while (true) {
    const Point p = curve.at(t);
    const double r = clearance(domain, p) / 8.0;
    const bool covered = std::any_of(kept.begin(), kept.end(), [&](const Cube& q) { return q.contains(p); });
    if (!covered) {
      kept.push_back({p, r});
      kept_at.push_back(t);
    }
    if (t >= L) break;
    const double next = std::min(L, t + 0.25 * r);
    if (!(next > t)) throw Error(ErrorCode::ClearanceZero, "curve approaches the boundary");
    t = next;
  }
  chain.cover_size = kept.size();

  // A single kept cube holding both endpoints is the whole chain.
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i].contains(chain.x) && kept[i].contains(chain.y)) {
      chain.cubes = {kept[i]};
      chain.centers_at = {kept_at[i]};
      return chain;
    }
  }

  const std::size_t n = kept.size();
  std::vector<std::size_t> parent(n, n);
  std::vector<char> seen(n, 0);
  std::queue<std::size_t> queue;
  seen[0] = 1;
  queue.push(0);
  std::size_t target = n;
  while (!queue.empty() && target == n) {
    const std::size_t i = queue.front();
    queue.pop();
    if (kept[i].contains(chain.y)) {
      target = i;
      break;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[j] || !kept[i].intersects(kept[j])) continue;
      seen[j] = 1;
      parent[j] = i;
      queue.push(j);
    }
  }
  if (target == n) throw Error(ErrorCode::Disconnected, "kept cubes do not link x to y");

  std::vector<std::size_t> path;
  for (std::size_t i = target; i != n; i = parent[i]) path.push_back(i);
  std::reverse(path.begin(), path.end());
  for (std::size_t i : path) {
    chain.cubes.push_back(kept[i]);
    chain.centers_at.push_back(kept_at[i]);
  }
  for (std::size_t i = 1; i < chain.cubes.size(); ++i) {
    const Box a = box_of(chain.cubes[i - 1]), b = box_of(chain.cubes[i]);
    const Point lo{std::max(a.lo.x, b.lo.x), std::max(a.lo.y, b.lo.y)};
    const Point hi{std::min(a.hi.x, b.hi.x), std::min(a.hi.y, b.hi.y)};
    chain.connections.push_back(0.5 * (lo + hi));
  }
  return chain;
}

int covering_multiplicity(const std::vector<Cube>& cubes) {
  // The deepest point can be taken at (max lo.x, max lo.y) of the cubes
  // covering it, so lower-left coordinates are the only candidates.
  int best = 0;
  std::vector<std::pair<double, int>> events;
  for (const Cube& q : cubes) {
    const double x = q.center.x - q.radius;
    events.clear();
    for (const Cube& o : cubes) {
      if (x < o.center.x - o.radius || x > o.center.x + o.radius) continue;
      events.push_back({o.center.y - o.radius, -1});
      events.push_back({o.center.y + o.radius, +1});
    }
    // Opening before closing at equal heights: the cubes are closed.
    std::sort(events.begin(), events.end());
    int depth = 0;
    for (const auto& e : events) {
      depth -= e.second;
      best = std::max(best, depth);
    }
  }
  return best;
}

double length_inside(const ParamCurve& curve, const Cube& cube) {
  const Box b = box_of(cube);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const Point p = curve.vertices[i], d = curve.vertices[i + 1] - p;
    double lo = 0.0, hi = 1.0;
    auto clip = [&](double den, double num) {
      if (den == 0.0) return num >= 0.0;
      const double r = num / den;
      if (den < 0.0) lo = std::max(lo, r);
      else hi = std::min(hi, r);
      return true;
    };
    if (!clip(-d.x, p.x - b.lo.x) || !clip(d.x, b.hi.x - p.x) || !clip(-d.y, p.y - b.lo.y) ||
        !clip(d.y, b.hi.y - p.y))
      continue;
    if (hi > lo) total += (hi - lo) * euclidean_norm(d);
  }
  return total;
}

ChainReport verify_chain(const CubeChain& chain, const PlanarDomain& domain) {
  ChainReport r;
  const auto& q = chain.cubes;
  const std::size_t n = q.size();
  if (n == 0) return r;
  r.endpoints = q.front().contains(chain.x) && q.back().contains(chain.y);

  r.distinct = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (q[i].center.x == q[j].center.x && q[i].center.y == q[j].center.y && q[i].radius == q[j].radius)
        r.distinct = false;

  r.consecutive = true;
  for (std::size_t i = 1; i < n; ++i) r.consecutive = r.consecutive && q[i - 1].intersects(q[i]);

  r.dilation = true;
  for (const Cube& c : q) {
    const double d = domain.contains(c.center) ? domain.distance_to_boundary_set(c.center, Norm::Uniform) : 0.0;
    r.radius_error = std::max(r.radius_error, std::abs(c.radius - d / 8.0));
    const Cube big = c.dilated(2.0);
    bool inside = d > big.radius;
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0})
        inside = inside && domain.contains(c.center + Point{sx * big.radius, sy * big.radius});
    r.dilation = r.dilation && inside;
  }
  r.radii = r.radius_error <= 1e-12;

  r.connections = chain.connections.size() + 1 == n;
  for (std::size_t i = 1; i < n && r.connections; ++i) {
    const Point a = chain.connections[i - 1];
    r.connections = q[i - 1].contains(a) && q[i].contains(a);
  }

  std::vector<Cube> doubled;
  for (const Cube& c : q) doubled.push_back(c.dilated(2.0));
  r.multiplicity = covering_multiplicity(doubled);
  r.multiplicity_ok = r.multiplicity <= kMultiplicityBound;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && doubled[i].intersects(doubled[j]))
        r.radius_ratio = std::max(r.radius_ratio, q[i].radius / q[j].radius);
  r.comparability = r.radius_ratio <= 5.0 / 3.0 + 1e-9;

  for (const Cube& c : q) {
    if (c.contains(chain.x) && c.contains(chain.y)) continue;
    if (c.radius > length_inside(chain.curve, c) * (1.0 + 1e-9)) ++r.radius_length_violations;
  }

  r.ok = r.endpoints && r.distinct && r.consecutive && r.radii && r.dilation && r.connections &&
         r.multiplicity_ok && r.comparability && r.radius_length_violations == 0;
  return r;
}

}  // namespace subhyp
