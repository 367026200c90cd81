#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subhyp/geometry.hpp"
#include "subhyp/metric.hpp"

namespace subhyp {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum class Verdict { Subhyperbolic, Diverging, Inconclusive };
const char* verdict_name(Verdict v);

struct PairSample {
  Point x;
  Point y;
  double scale = 0.0;
  double distance = 0.0;  // d_α estimate
  double ratio = 0.0;     // d / scale^α
  bool hard = false;      // both endpoints within 2 scale of the boundary
};

struct ScaleStat {
  double scale = 0.0;
  double max_ratio = 0.0;
  std::size_t pairs = 0;
  PairSample worst;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;
  int points = 0;
};

/// Least squares of y against x with the standard error of the slope.
SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct CertifyOptions {
  /// 0 selects diam/4.
  double theta = 0.0;
  std::size_t budget = 96;
  int scales = 6;
  std::uint64_t seed = kDefaultSeed;
  int top_k = 2;
  int climb_rounds = 20;
  bool climb = true;
  double eps_slope = 0.1;
  /// Endpoints keep at least this fraction of the scale from the boundary.
  double clearance = 0.02;
  Norm norm = Norm::Uniform;
  /// Grid spacing for pair evaluations as a fraction of the pair scale.
  double h_fraction = 1.0 / 16.0;
};

struct SubhypCertificate {
  std::string domain;
  double alpha = 0.0;
  double theta = 0.0;
  double C_est = 0.0;
  std::vector<PairSample> worst_pairs;
  std::vector<ScaleStat> per_scale;
  SlopeFit fit;
  double eps_slope = 0.1;
  Verdict verdict = Verdict::Inconclusive;
  std::size_t evaluations = 0;
  std::uint64_t seed = kDefaultSeed;
};

SubhypCertificate estimate_constant(const PlanarDomain& domain, double alpha,
                                    const CertifyOptions& opts = {});

/// Verdict rule: diverging iff slope + stderr < -eps, subhyperbolic iff
/// slope - stderr >= -eps, inconclusive otherwise.
Verdict verdict_from_fit(const SlopeFit& fit, double eps_slope);

SubhypCertificate classify_alpha(const PlanarDomain& domain, double alpha,
                                 const CertifyOptions& opts = {});

struct ScanResult {
  std::vector<double> alphas;
  std::vector<SubhypCertificate> certificates;
  /// Largest prefix classified diverging and smallest index of the suffix
  /// classified subhyperbolic; the critical exponent lies in between.
  std::size_t diverging_prefix = 0;
  std::size_t subhyperbolic_from = 0;
  double lower = 0.0;
  double upper = 1.0;
  /// Indices i where verdict(i) is subhyperbolic but verdict(i+1) diverging.
  std::vector<std::size_t> inversions;
};

/// Throws InvalidArgument unless the grid is sorted ascending in (0,1].
ScanResult scan_alpha(const PlanarDomain& domain, const std::vector<double>& alphas,
                      const CertifyOptions& opts = {});

/// α = (p - n)/(p - 1) and its inverse p = (n - α)/(1 - α).
double alpha_from_p(double p, int n);
double p_from_alpha(double alpha, int n);

struct ExtensionVerdict {
  double p = 0.0;
  int n = 2;
  double alpha = 0.0;
  /// Planar case: the metric criterion is necessary and sufficient.
  bool characterization = true;
  /// Positive verdict (extension domain); false when negative or unknown.
  bool extension = false;
  std::string verdict;
  SubhypCertificate certificate;
};

/// Throws BadExponent for p <= n. The global condition is approximated by
/// θ = diam Ω with six dyadic scales unless opts.theta is set.
ExtensionVerdict classify_extension(const PlanarDomain& domain, double p, int n,
                                    CertifyOptions opts = {});

}  // namespace subhyp
