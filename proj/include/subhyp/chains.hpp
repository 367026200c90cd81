#pragma once

#include <cstddef>
#include <vector>

#include "subhyp/geometry.hpp"
#include "subhyp/metric.hpp"

namespace subhyp {

/// Cubes Q_i = Q(z_i, dist_inf(z_i)/8) with centers on the curve, linked
/// x -> y through pairwise intersections.
struct CubeChain {
  ParamCurve curve;
  std::vector<Cube> cubes;
  /// Arclength of each center z_i along the curve.
  std::vector<double> centers_at;
  /// a_1..a_m with a_i ∈ Q_{i-1} ∩ Q_i.
  std::vector<Point> connections;
  Point x;
  Point y;
  /// Size of the greedy cover the chain was extracted from.
  std::size_t cover_size = 0;
};

/// Walks the curve at steps of at most r/4, keeps a cube whenever the walk
/// leaves the kept union, then takes a shortest x -> y path in the
/// intersection graph. Throws ClearanceZero if the curve meets ∂Ω.
CubeChain build_chain(const PlanarDomain& domain, const ParamCurve& curve);

struct ChainReport {
  bool endpoints = false;
  bool distinct = false;
  bool consecutive = false;
  bool radii = false;
  double radius_error = 0.0;
  bool dilation = false;
  bool connections = false;
  /// Largest number of doubled cubes 2Q_i sharing a point.
  int multiplicity = 0;
  bool multiplicity_ok = false;
  /// max r/r_i over pairs with 2Q ∩ 2Q_i nonempty.
  double radius_ratio = 1.0;
  bool comparability = false;
  /// Cubes missing x or y with r_i > lng(Γ ∩ Q_i).
  std::size_t radius_length_violations = 0;
  bool ok = false;
};

inline constexpr int kMultiplicityBound = 196;

ChainReport verify_chain(const CubeChain& chain, const PlanarDomain& domain);

/// Exact covering multiplicity of a family of closed axis-parallel cubes.
int covering_multiplicity(const std::vector<Cube>& cubes);

/// Length of the part of the polyline inside the closed cube.
double length_inside(const ParamCurve& curve, const Cube& cube);

}  // namespace subhyp
