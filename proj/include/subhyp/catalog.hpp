#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subhyp/geometry.hpp"

namespace subhyp {

// Catalog domains at fixed resolutions:
//   square                 [0,1]^2
//   disk-256               unit disk, regular 256-gon
//   annulus                256-gon of radius 1 minus 128-gon of radius 1/2
//   inward-cusp-S          {0 < x < 1, |y| < x^S}, 2x200 graded edge vertices
//   exterior-cusp-S        [-1,1]^2 minus the thorn {0 <= x <= 1, |y| <= x^S/2}
//   rooms-and-corridors    5 rooms of side 2^-(j+1) joined by corridors whose
//                          width is the square of the next room's side
std::vector<std::string> catalog_names();

/// Accepts the names above; S may be any exponent > 1 ("inward-cusp-2.5").
/// "disk" is an alias of disk-256.
PlanarDomain catalog_domain(const std::string& name);

PlanarDomain make_square();
PlanarDomain make_disk(int vertices = 256);
PlanarDomain make_annulus();
PlanarDomain make_inward_cusp(double s, int edge_vertices = 200);
PlanarDomain make_exterior_cusp(double s, int edge_vertices = 200);
PlanarDomain make_rooms_and_corridors(int rooms = 5);

/// FNV-1a over the canonical JSON serialization.
std::uint64_t domain_checksum(const PlanarDomain& domain);

}  // namespace subhyp
