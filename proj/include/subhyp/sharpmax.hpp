#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "subhyp/function_spec.hpp"
#include "subhyp/geometry.hpp"

namespace subhyp {

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

/// Values at the centers of an h-grid over the bounding box; cells whose
/// center lies outside Ω carry value 0 and inside = 0.
struct ScalarField {
  Point origin;
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<double> values;
  std::vector<unsigned char> inside;
  std::optional<FunctionSpec> source;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  Point center(int i, int j) const { return {origin.x + (i + 0.5) * h, origin.y + (j + 0.5) * h}; }
  double value(int i, int j) const { return values[index(i, j)]; }
  bool is_inside(int i, int j) const { return inside[index(i, j)] != 0; }
  std::size_t inside_count() const;
  /// Same grid and mask with new values.
  ScalarField with_values(std::vector<double> v) const;
};

/// Throws ResolutionTooCoarse when fewer than 9 cell centers fall inside.
ScalarField sample_field(const PlanarDomain& domain, const FunctionSpec& f, double h);
ScalarField sample_field(const PlanarDomain& domain, const std::function<double(Point)>& f, double h);

/// ‖∇^k f‖ (Frobenius norm over all k-th partials, counted with
/// multiplicity) at the inside cells. Throws MissingDerivatives without an
/// analytic source.
ScalarField derivative_norm_field(const ScalarField& field, int k);

/// Polynomial of degree <= k-1 in powers of (x - c.x), (y - c.y).
struct PolyApprox {
  int k = 1;
  Point center;
  std::vector<std::pair<int, int>> exponents;
  std::vector<double> coefficients;
  double residual = 0.0;
  double operator()(Point p) const;
};

struct LocalApprox {
  double E = 0.0;
  PolyApprox poly;
  std::size_t cells = 0;
};

/// E_k(f; Q)_{L_q} = |Q|^{-1/q} ‖f - P‖_{L_q(Q ∩ Ω)} for the least-squares
/// candidate P (refined by five Lawson rounds and recentering when q = ∞).
/// Throws EmptyIntersection when no inside cell lies in Q.
LocalApprox local_best_approx(const ScalarField& field, const Cube& Q, int k, double q);

/// {h 2^j : jmin <= j <= jmax}.
std::vector<double> dyadic_radii(double h, int jmin, int jmax);
/// h 2^j from j = -1 up to the last radius not exceeding `limit`.
std::vector<double> default_radii(double h, double limit);

struct MaximalField {
  ScalarField field;
  std::vector<double> radii;
  /// Radius attaining the sup at each cell (0 outside).
  std::vector<double> best_radius;
};

/// sup over radii of r^{-k} E_k(f; Q(x,r))_{L_1(Ω)} at every inside cell.
/// Q(x,r) is the block of cells whose centers are within r of x in the
/// uniform norm.
MaximalField sharp_maximal(const ScalarField& field, int k, const std::vector<double>& radii);

/// sup over radii of the average of |f^∨| over Q(x,r), f^∨ the extension by
/// zero, by summed-area tables.
MaximalField hl_maximal(const ScalarField& field, const std::vector<double>& radii);

struct TaylorTerm {
  Point x;
  Point y;
  double scale = 0.0;
  int bx = 0;
  int by = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct TaylorReport {
  double p = 0.0;
  double p_star = 0.0;
  double lambda = 0.0;
  std::vector<TaylorTerm> terms;
  std::vector<double> scales;
  std::vector<double> max_ratio;  // per scale
  /// Slope of log max ratio against log(1/scale).
  double slope = 0.0;
};

struct TaylorOptions {
  /// Working subhyperbolicity constant feeding p* and λ = 4 e^{2C}.
  double C = 1.0;
  /// 0 selects 4 e^{2C}.
  double lambda = 0.0;
  /// Quadrature cells per side of λ Q_xy ∩ bbox.
  int cells = 48;
};

/// |D^β T_x^{k-1} f(x) - D^β T_y^{k-1} f(x)| against
/// |x-y|^{k-|β|-2/p*} (∫_{λQ_xy ∩ Ω} ‖∇^k f‖^{p*})^{1/p*} for |β| <= k-1.
TaylorReport taylor_remainder_check(const ScalarField& field, const PlanarDomain& domain, double alpha,
                                    int k, const std::vector<std::pair<Point, Point>>& pairs,
                                    const TaylorOptions& opts = {});

/// `per_scale` pairs inside Ω at each separation in `scales`.
std::vector<std::pair<Point, Point>> sample_pairs(const PlanarDomain& domain,
                                                  const std::vector<double>& scales,
                                                  std::size_t per_scale, std::uint64_t seed);

struct Cor2Report {
  double p = 0.0;
  double p_star = 0.0;
  double theta = 0.0;
  /// LHS / (A + θ^{-k} ℳ[f^∨]) per cell; NaN outside, 0 where both vanish.
  std::vector<double> ratio;
  double max_ratio = 0.0;
  /// Radii r <= θ against A = (ℳ[(‖∇^k f‖^∨)^{p*}])^{1/p*}.
  double max_small = 0.0;
  /// Radii r > θ against θ^{-k} ℳ[f^∨].
  double max_large = 0.0;
  std::size_t points = 0;
};

struct Cor2Options {
  /// 0 selects diam(Ω)/4.
  double theta = 0.0;
  double C = 1.0;
};

Cor2Report cor2_check(const ScalarField& field, const PlanarDomain& domain, int k, double p,
                      const std::vector<double>& radii, const Cor2Options& opts = {});

struct ExtensionCheck {
  double h = 0.0;
  double q = 0.0;
  int k = 1;
  double f_norm = 0.0;
  double sharp_norm = 0.0;
  double f_norm_fine = 0.0;
  double sharp_norm_fine = 0.0;
  /// sharp_norm_fine / sharp_norm.
  double growth = 1.0;
  double sigma = 0.0;
  double sigma_fine = 0.0;
  bool stable = false;
  bool extendable = false;
  std::string verdict;
};

/// (‖f‖_{L_q(Ω)}, ‖f♯_{k,Ω}‖_{L_q(Ω)}) at spacings h and h/2; extendable at
/// grid scale iff both are finite and the sharp norm moves by at most 10%.
/// Throws NotRegular when the regularity constant more than doubles under
/// the refinement.
ExtensionCheck extension_criterion(const std::function<double(Point)>& f, const PlanarDomain& domain,
                                   int k, double q, double h);
ExtensionCheck extension_criterion(const FunctionSpec& f, const PlanarDomain& domain, int k, double q,
                                   double h);

/// (Σ |v|^q h^2)^{1/q} over inside cells (max for q = ∞).
double lq_norm(const ScalarField& field, double q);

}  // namespace subhyp
