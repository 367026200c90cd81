#include "subhyp/catalog.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "subhyp/domain_io.hpp"
#include "subhyp/errors.hpp"

namespace subhyp {

namespace {

Polygon regular_polygon(int n, double radius) {
  Polygon p;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    p.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return p;
}

// Abscissae in (0,1], quadratically graded toward 0.
std::vector<double> graded(int n) {
  std::vector<double> xs;
  for (int i = 1; i <= n; ++i) {
    const double u = static_cast<double>(i) / n;
    xs.push_back(u * u);
  }
  return xs;
}

std::string format_exponent(double s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"square",          "disk-256",        "annulus",         "inward-cusp-2",
          "inward-cusp-3",   "exterior-cusp-2", "exterior-cusp-3", "rooms-and-corridors"};
}

PlanarDomain make_square() {
  return PlanarDomain("square", {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

PlanarDomain make_disk(int vertices) {
  return PlanarDomain("disk-" + std::to_string(vertices), regular_polygon(vertices, 1.0));
}

PlanarDomain make_annulus() {
  return PlanarDomain("annulus", regular_polygon(256, 1.0), {regular_polygon(128, 0.5)});
}

PlanarDomain make_inward_cusp(double s, int edge_vertices) {
  if (!(s > 1.0)) throw Error(ErrorCode::InvalidArgument, "cusp exponent must exceed 1");
  const auto xs = graded(edge_vertices);
  Polygon p{{0.0, 0.0}};
  for (double x : xs) p.push_back({x, -std::pow(x, s)});
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) p.push_back({*it, std::pow(*it, s)});
  return PlanarDomain("inward-cusp-" + format_exponent(s), std::move(p));
}

PlanarDomain make_exterior_cusp(double s, int edge_vertices) {
  if (!(s > 1.0)) throw Error(ErrorCode::InvalidArgument, "cusp exponent must exceed 1");
  const auto xs = graded(edge_vertices);
  Polygon p{{-1.0, -1.0}, {1.0, -1.0}};
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) p.push_back({*it, -0.5 * std::pow(*it, s)});
  p.push_back({0.0, 0.0});
  for (double x : xs) p.push_back({x, 0.5 * std::pow(x, s)});
  p.push_back({1.0, 1.0});
  p.push_back({-1.0, 1.0});
  return PlanarDomain("exterior-cusp-" + format_exponent(s), std::move(p));
}

PlanarDomain make_rooms_and_corridors(int rooms) {
  if (rooms < 1) throw Error(ErrorCode::InvalidArgument, "need at least one room");
  Polygon lower;
  double x = 0.0;
  for (int j = 0; j < rooms; ++j) {
    const double a = 0.5 * std::ldexp(1.0, -j);
    if (j > 0) {
      const double w = a * a;
      lower.push_back({x, -0.5 * w});
      x += 0.5 * a;
      lower.push_back({x, -0.5 * w});
    }
    lower.push_back({x, -0.5 * a});
    x += a;
    lower.push_back({x, -0.5 * a});
    if (j + 1 < rooms) {
      const double next = 0.25 * std::ldexp(1.0, -j);
      lower.push_back({x, -0.5 * next * next});
    }
  }
  // The corridor vertex emitted at the end of room j duplicates the first one
  // of room j+1; drop those duplicates.
  Polygon clean;
  for (Point p : lower)
    if (clean.empty() || !(clean.back() == p)) clean.push_back(p);
  Polygon outline = clean;
  for (auto it = clean.rbegin(); it != clean.rend(); ++it) outline.push_back({it->x, -it->y});
  return PlanarDomain("rooms-and-corridors", std::move(outline));
}

PlanarDomain catalog_domain(const std::string& name) {
  if (name == "square") return make_square();
  if (name == "disk" || name == "disk-256") return make_disk(256);
  if (name == "annulus") return make_annulus();
  if (name == "rooms-and-corridors") return make_rooms_and_corridors(5);
  auto suffix = [&](const std::string& prefix) -> std::optional<double> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    try {
      std::size_t used = 0;
      const std::string rest = name.substr(prefix.size());
      const double s = std::stod(rest, &used);
      if (used != rest.size()) return std::nullopt;
      return s;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  if (auto s = suffix("inward-cusp-")) return make_inward_cusp(*s);
  if (auto s = suffix("exterior-cusp-")) return make_exterior_cusp(*s);
  throw Error(ErrorCode::InvalidDomain, "unknown catalog domain '" + name + "'");
}

std::uint64_t domain_checksum(const PlanarDomain& domain) {
  const std::string text = domain_to_json(domain).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace subhyp
