#pragma once

#include <cstddef>
#include <vector>

#include "subhyp/geometry.hpp"

namespace subhyp {

/// Polyline inside Ω with cumulative Euclidean arclength and the weight trace
/// w_i = dist(vertex_i, ∂Ω) in `norm`.
struct ParamCurve {
  std::vector<Point> vertices;
  std::vector<double> arclength;
  std::vector<double> weight;
  Norm norm = Norm::Uniform;

  static ParamCurve from_points(const PlanarDomain& domain, std::vector<Point> pts,
                                Norm norm = Norm::Uniform);

  double length() const { return arclength.empty() ? 0.0 : arclength.back(); }
  std::size_t size() const { return vertices.size(); }
  Point front() const { return vertices.front(); }
  Point back() const { return vertices.back(); }
  /// Point at arclength t, clamped to [0, length()].
  Point at(double t) const;
  /// Index i of the segment [t_i, t_{i+1}] holding t.
  std::size_t segment_at(double t) const;
  /// Same curve with segments no longer than max_step; original vertices
  /// are kept.
  ParamCurve resampled(const PlanarDomain& domain, double max_step) const;
};

/// ∫_[a,b] dist^{α-1} ds by adaptive bisection (midpoint vs trapezoid).
double segment_weighted_length(const PlanarDomain& domain, Point a, Point b, double alpha,
                               Norm norm = Norm::Uniform, double rel_tol = 1e-6);

/// len_α of a polyline. Throws CurveTouchesBoundary if a node lies on ∂Ω and
/// α < 1.
double weighted_length(const ParamCurve& curve, double alpha, const PlanarDomain& domain,
                       double rel_tol = 1e-6);

/// Running integral I_i = ∫_0^{t_i} dist^{β-1} ds at every vertex.
std::vector<double> weighted_prefix(const ParamCurve& curve, double beta,
                                    const PlanarDomain& domain, double rel_tol = 1e-6);

struct MetricOptions {
  Norm norm = Norm::Uniform;
  /// Initial grid spacing; 0 selects diam/128 (global) or |x-y|/16 (local).
  double h = 0.0;
  /// Stop when successive refinements differ by less than tol * value.
  double tol = 1e-3;
  /// If positive, stop instead once the refinement delta is at most this.
  double slack = 0.0;
  /// Node budget for one grid solve.
  std::size_t max_nodes = std::size_t{1} << 22;
  int max_levels = 6;
  /// Solve on a window around the pair instead of the whole bounding box.
  bool local = false;
  /// Shortcut, resample and relax the grid path.
  bool optimize = true;
  /// Run the second, denser relaxation stage.
  bool fine = true;
};

struct GeodesicResult {
  double value = 0.0;
  double gap = 0.0;
  double alpha = 1.0;
  double h = 0.0;
  int levels = 0;
  std::vector<double> history;
  ParamCurve curve;
};

/// Upper estimate of d_{α,Ω}(x,y) by weighted Dijkstra on a grid graph,
/// followed by curve optimization and h-refinement.
GeodesicResult subhyp_distance(const PlanarDomain& domain, double alpha, Point x, Point y,
                               const MetricOptions& opts = {});

/// Curve whose length exceeds the converged estimate by at most delta.
/// Throws SlackUnreachable when the refinement budget (4096^2 nodes) runs out.
ParamCurve near_geodesic(const PlanarDomain& domain, double alpha, Point x, Point y,
                         double delta, MetricOptions opts = {});

struct LengthBoundReport {
  double length = 0.0;
  double separation = 0.0;
  double constant = 0.0;
  double bound = 0.0;        // 2 e^C |x-y|
  double sharp_bound = 0.0;  // (αC + 2^α)^{1/α} |x-y|
  bool holds = false;
  bool sharp_holds = false;
};

/// Throws PreconditionNotMet when max(dist(x), dist(y)) > 2|x-y|.
LengthBoundReport check_length_bound(const ParamCurve& curve, const PlanarDomain& domain,
                                     double alpha, double C);

/// Smallest C with len_α(curve) <= C |x-y|^α.
double measured_constant(const ParamCurve& curve, const PlanarDomain& domain, double alpha);

struct SegmentCaseReport {
  bool segment_inside = false;
  double weighted = 0.0;
  double bound = 0.0;  // |x-y|^β
  bool holds = false;
};

/// Throws PreconditionNotMet unless max(dist(x), dist(y)) > 2|x-y|.
SegmentCaseReport check_segment_case(const PlanarDomain& domain, Point x, Point y, double beta,
                                     Norm norm = Norm::Uniform);

struct A1Report {
  double length = 0.0;
  double weighted = 0.0;
  double minimal_C = 0.0;  // len_α / lng^α
  Point zbar;
  double zbar_distance = 0.0;
  double part_i_bound = 0.0;  // C^{1/(1-α)} dist(zbar)
  bool part_i = false;
  double mean = 0.0;
  double inf_weight = 0.0;  // inf dist^{α-1}
  bool part_ii = false;
};

/// Throws HypothesisFails (value = minimal C) when len_α > C lng^α.
A1Report check_a1_property(const ParamCurve& curve, const PlanarDomain& domain, double alpha,
                           double C);

}  // namespace subhyp
