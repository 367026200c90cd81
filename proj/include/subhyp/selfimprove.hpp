#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "subhyp/cantor.hpp"
#include "subhyp/geometry.hpp"
#include "subhyp/metric.hpp"

namespace subhyp {

struct ExponentRecord {
  double alpha = 0.0;
  double C = 0.0;
  double C_g = 0.0;
  int m = 0;
  long long k = 0;
  int n = 2;
  double separation = 0.0;
  double eps = 0.0;
  /// min(d, m^{-αk} |x-y|^α); underflows to 0 for realistic k, so its
  /// base-10 logarithm is kept as well.
  double delta = 0.0;
  double log10_delta = 0.0;
  double q_sharp = 0.0;
  double q_star = 0.0;
  double q_cap = 0.0;  // (1 - α/2)/(1 - α)
  double q_tilde = 0.0;
  double alpha_star = 0.0;
  double p = 0.0;
  double p_star = 0.0;
};

/// m = floor(2 (2C)^{1/(1-α)}) + 1 and k the least k >= 1 with
/// 2 e^{2C} |x-y| (1 - 1/m)^k <= eps, followed by the exponent chain.
/// `d` defaults to the upper estimate C |x-y|^α.
ExponentRecord compute_exponents(double alpha, double C, double eps, double separation, int n = 2,
                                 std::optional<double> d = std::nullopt);

/// τ = q(α - 1) + 1.
double tau_from_q(double alpha, double q);

struct MAdicInterval {
  long long level = 0;
  std::uint64_t index = 0;
  double a = 0.0;
  double b = 0.0;
};

struct CantorDecomposition {
  ParamCurve curve;
  WeightTrace trace;
  CantorSet cantor;
  ExponentRecord exponents;
  /// Gap of the last metric refinement; the nominal slack δ is far below
  /// anything a grid can reach.
  double achieved_gap = 0.0;
  double d_alpha = 0.0;
  /// Selected intervals above the trace resolution, listed explicitly.
  std::vector<MAdicInterval> selected;
  /// Surviving intervals on which the trace is linear; their subtrees are
  /// accounted for in closed form.
  std::vector<MAdicInterval> blocks;
  /// Explicit level-k survivors (part of E).
  std::vector<MAdicInterval> residual;
  /// |E| summed over residual intervals and block survivors.
  double measure_E = 0.0;
  /// max g / min g over every selected interval (exact for explicit ones,
  /// an upper bound inside blocks).
  double max_oscillation = 1.0;
};

/// Selector that takes the child holding the first maximizer of the trace,
/// the lower child on a shared endpoint.
CantorSet::Selector argmax_selector(const WeightTrace& trace, int m);

/// Runs the m-adic selection on the weight trace of `curve`.
CantorDecomposition decompose_curve(const ParamCurve& curve, double alpha,
                                    const ExponentRecord& exponents);

/// Builds the near-geodesic and decomposes it. C <= 0 takes the working
/// constant max(1, d/|x-y|^α) of the pair. Throws PreconditionNotMet outside
/// the hard stratum max(dist x, dist y) <= 2|x-y|.
CantorDecomposition cantor_decompose(const PlanarDomain& domain, double alpha, double C, Point x,
                                     Point y, double eps, const MetricOptions& metric = {});

struct TauCheck {
  double tau = 0.0;
  double integral = 0.0;  // upper bound for ∫_U w^{τ-1}
  double constant = 0.0;  // integral / |x-y|^τ
};

struct DecompositionReport {
  std::vector<TauCheck> tau_checks;
  double tau_constant = 0.0;
  double measure_E = 0.0;
  double formula_E = 0.0;
  double measure_E_error = 0.0;  // relative
  bool measure_exact = false;
  double eps = 0.0;
  bool lgw_holds = false;
  double aa_integral = 0.0;  // upper bound for ∫_E w^{α-1}
  double aa_constant = 0.0;
  double oscillation = 0.0;
  double oscillation_bound = 0.0;
  bool oscillation_holds = false;
  double porosity = 0.0;  // max |I| / |I ∩ U|
  double porosity_bound = 0.0;
  std::size_t porosity_samples = 0;
  std::size_t porosity_violations = 0;
  double regularity = 0.0;  // max diam B / lng(B ∩ Γ̂)
  std::size_t regularity_samples = 0;
  double length_ratio = 0.0;  // lng Γ / |x-y|
};

struct VerifyOptions {
  int tau_points = 9;
  std::size_t centers = 1000;
  int lengths = 24;
  std::size_t ball_centers = 200;
  int radii = 8;
  std::uint64_t seed = 20240601;
};

DecompositionReport verify_decomposition(const CantorDecomposition& dec,
                                         const VerifyOptions& opts = {});

/// max over the sampled intervals I centered in U with |I| <= 2L of
/// |I| / |I ∩ U|, with the number of violations of |I| <= 4m |I ∩ U|.
struct PorosityResult {
  double worst = 0.0;
  std::size_t samples = 0;
  std::size_t violations = 0;
};
PorosityResult porosity_check(const CantorSet& set, const std::vector<double>& centers,
                              const std::vector<double>& lengths);

struct ReverseHolderProfile {
  int m = 2;
  int k = 0;
  double length = 0.0;
  /// sup over the m-adic family of avg_I g / inf_I g, with inf_I taken over
  /// level-k cell averages.
  double C_g = 0.0;
  double cap = 0.0;
  std::vector<double> q;
  std::vector<double> C_tilde;
  /// Largest grid q with C̃(q) <= cap.
  double q_max = 0.0;
  double C_at_q_max = 0.0;
};

/// C̃(q) = ((1/L) ∫ (M_S g)^q)^{1/q} / ((1/L) ∫ g), with M_S the maximal
/// function over the m-adic intervals of level <= k. `integral(a, b)`
/// returns ∫_a^b g. cap <= 0 selects 10 C_g; an empty grid selects
/// q = 1, 1.05, ..., 3.
ReverseHolderProfile reverse_holder_exponent(const std::function<double(double, double)>& integral,
                                             double length, int m, int k,
                                             std::vector<double> q_grid = {}, double cap = 0.0);

struct TauCurveReport {
  double separation = 0.0;
  double length = 0.0;
  double alpha_length = 0.0;
  double q_tilde = 0.0;
  double q = 0.0;
  double tau = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double tau_length = 0.0;  // ∫_γ dist^{τ-1} ds
  double bound = 0.0;       // C2^q |x-y|^τ
  bool holds = false;
};

struct TauResult {
  double tau = 1.0;
  double constant = 0.0;  // max C2^q over the family
  std::vector<TauCurveReport> curves;
};

struct TauOptions {
  /// Curves are resampled to at most this step before the arc checks;
  /// 0 selects length / 256.
  double h = 0.0;
  int m = 2;
  int k = 10;
};

/// Checks ∫_{γ_uv} dist^{α-1} <= C |u-v|^α on every pair of curve vertices
/// (throws NotStronglySubhyperbolic with the worst arc), then derives τ from
/// the reverse Hölder exponent of w^{α-1} and verifies the τ-bound.
TauResult self_improve_tau(const PlanarDomain& domain, double alpha,
                           const std::vector<ParamCurve>& curves, double C,
                           const TauOptions& opts = {});

}  // namespace subhyp
