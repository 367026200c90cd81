#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace subhyp {

/// Piecewise linear function w on [t_0, t_{N-1}] through the samples
/// (t_i, w_i), with O(1) range max/min over the samples.
class WeightTrace {
 public:
  /// Throws DegenerateTrace unless t is strictly increasing, N >= 2 and
  /// every w_i is positive and finite.
  WeightTrace(std::vector<double> t, std::vector<double> w);

  double start() const { return t_.front(); }
  double end() const { return t_.back(); }
  std::size_t samples() const { return t_.size(); }
  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& values() const { return w_; }

  double operator()(double t) const;
  /// Smallest maximizer of w on [a, b].
  double argmax(double a, double b) const;
  double max(double a, double b) const;
  double min(double a, double b) const;
  /// True when no sample lies strictly inside (a, b).
  bool linear_on(double a, double b) const;
  /// ∫_a^b w^beta dt, exact on every linear piece.
  double power_integral(double a, double b, double beta) const;

 private:
  // Indices of samples strictly inside (a, b) as [lo, hi), possibly empty.
  std::pair<std::size_t, std::size_t> inner(double a, double b) const;
  std::size_t range_argmax(std::size_t lo, std::size_t hi) const;
  double range_min(std::size_t lo, std::size_t hi) const;

  std::vector<double> t_;
  std::vector<double> w_;
  std::vector<std::vector<std::uint32_t>> max_table_;
  std::vector<std::vector<double>> min_table_;
};

/// The set U in [0, L] left by k stages of m-adic selection: each surviving
/// interval of level j < k gives up the child named by `select` to U and
/// passes its other m - 1 children on. The structure is never materialized;
/// queries descend it lazily.
class CantorSet {
 public:
  /// select(a, b, level) returns the child index in [0, m) chosen inside [a, b].
  using Selector = std::function<int(double a, double b, int level)>;

  CantorSet(double length, int m, long long k, Selector select);

  double length() const { return L_; }
  int m() const { return m_; }
  long long k() const { return k_; }
  int select(double a, double b, int level) const;

  /// ((m-1)/m)^(k - level): fraction of a surviving level-`level` interval
  /// that stays in E.
  double survivor_fraction(long long level) const;
  /// Membership of t; false when t falls in E or below double resolution.
  /// `resolved` reports whether the descent reached a decision.
  bool in_U(double t, bool* resolved = nullptr) const;
  /// |[a, b] ∩ U|.
  double measure_U(double a, double b) const;

 private:
  double measure_node(double lo, double hi, long long level, double a, double b) const;

  double L_;
  int m_;
  long long k_;
  Selector select_;
  double ratio_;
};

}  // namespace subhyp
