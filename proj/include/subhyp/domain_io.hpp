#pragma once

#include <string>

#include <json.hpp>

#include "subhyp/geometry.hpp"

namespace subhyp {

nlohmann::json domain_to_json(const PlanarDomain& domain);

/// Throws Error(InvalidDomain) for malformed objects.
PlanarDomain domain_from_json(const nlohmann::json& j);

/// "catalog:NAME" resolves through the catalog; anything else is read as a
/// JSON domain file.
PlanarDomain load_domain(const std::string& source);

void save_domain(const PlanarDomain& domain, const std::string& path);

}  // namespace subhyp
