#include "subhyp/domain_io.hpp"

#include <fstream>

#include "subhyp/catalog.hpp"
#include "subhyp/errors.hpp"

namespace subhyp {

namespace {

nlohmann::json ring_to_json(const Polygon& ring) {
  auto arr = nlohmann::json::array();
  for (Point p : ring) arr.push_back({p.x, p.y});
  return arr;
}

Polygon ring_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidDomain, "ring must be an array");
  Polygon ring;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw Error(ErrorCode::InvalidDomain, "vertex must be [x, y]");
    ring.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return ring;
}

}  // namespace

nlohmann::json domain_to_json(const PlanarDomain& domain) {
  nlohmann::json j;
  j["name"] = domain.name();
  j["outer"] = ring_to_json(domain.outer());
  auto holes = nlohmann::json::array();
  for (const auto& h : domain.holes()) holes.push_back(ring_to_json(h));
  j["holes"] = holes;
  return j;
}

PlanarDomain domain_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("outer"))
    throw Error(ErrorCode::InvalidDomain, "domain object needs an 'outer' ring");
  const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>()
                                                                         : std::string("domain");
  std::vector<Polygon> holes;
  if (j.contains("holes")) {
    if (!j["holes"].is_array()) throw Error(ErrorCode::InvalidDomain, "'holes' must be an array");
    for (const auto& h : j["holes"]) holes.push_back(ring_from_json(h));
  }
  return PlanarDomain(name, ring_from_json(j["outer"]), std::move(holes));
}

PlanarDomain load_domain(const std::string& source) {
  const std::string prefix = "catalog:";
  if (source.rfind(prefix, 0) == 0) return catalog_domain(source.substr(prefix.size()));
  std::ifstream in(source);
  if (!in) throw Error(ErrorCode::InvalidDomain, "cannot open domain file '" + source + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidDomain, std::string("malformed JSON: ") + e.what());
  }
  return domain_from_json(j);
}

void save_domain(const PlanarDomain& domain, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << domain_to_json(domain).dump(2) << "\n";
}

}  // namespace subhyp
