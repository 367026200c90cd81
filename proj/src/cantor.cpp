#include "subhyp/cantor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "subhyp/errors.hpp"

namespace subhyp {

WeightTrace::WeightTrace(std::vector<double> t, std::vector<double> w) : t_(std::move(t)), w_(std::move(w)) {
  if (t_.size() != w_.size() || t_.size() < 2)
    throw Error(ErrorCode::DegenerateTrace, "a weight trace needs at least two samples");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!(w_[i] > 0.0) || !std::isfinite(w_[i]))
      throw Error(ErrorCode::DegenerateTrace, "weight samples must be positive and finite", w_[i]);
    if (i > 0 && !(t_[i] > t_[i - 1]))
      throw Error(ErrorCode::DegenerateTrace, "sample times must increase strictly");
  }
  const std::size_t n = t_.size();
  max_table_.emplace_back(n);
  min_table_.push_back(w_);
  for (std::size_t i = 0; i < n; ++i) max_table_[0][i] = static_cast<std::uint32_t>(i);
  for (std::size_t span = 1; 2 * span <= n; span *= 2) {
    const auto& pm = max_table_.back();
    const auto& pn = min_table_.back();
    std::vector<std::uint32_t> nm(n - 2 * span + 1);
    std::vector<double> nn(n - 2 * span + 1);
    for (std::size_t i = 0; i < nm.size(); ++i) {
      const auto a = pm[i], b = pm[i + span];
      nm[i] = w_[b] > w_[a] ? b : a;
      nn[i] = std::min(pn[i], pn[i + span]);
    }
    max_table_.push_back(std::move(nm));
    min_table_.push_back(std::move(nn));
  }
}

double WeightTrace::operator()(double t) const {
  if (t <= t_.front()) return w_.front();
  if (t >= t_.back()) return w_.back();
  const std::size_t i = static_cast<std::size_t>(std::upper_bound(t_.begin(), t_.end(), t) - t_.begin());
  const double s = (t - t_[i - 1]) / (t_[i] - t_[i - 1]);
  return w_[i - 1] + s * (w_[i] - w_[i - 1]);
}

std::pair<std::size_t, std::size_t> WeightTrace::inner(double a, double b) const {
  const auto lo = static_cast<std::size_t>(std::upper_bound(t_.begin(), t_.end(), a) - t_.begin());
  const auto hi = static_cast<std::size_t>(std::lower_bound(t_.begin(), t_.end(), b) - t_.begin());
  return {lo, std::max(lo, hi)};
}

std::size_t WeightTrace::range_argmax(std::size_t lo, std::size_t hi) const {
  const std::size_t len = hi - lo;
  const int level = std::bit_width(len) - 1;
  const std::size_t span = std::size_t{1} << level;
  const auto a = max_table_[level][lo], b = max_table_[level][hi - span];
  return w_[b] > w_[a] ? b : a;
}

double WeightTrace::range_min(std::size_t lo, std::size_t hi) const {
  const std::size_t len = hi - lo;
  const int level = std::bit_width(len) - 1;
  const std::size_t span = std::size_t{1} << level;
  return std::min(min_table_[level][lo], min_table_[level][hi - span]);
}

double WeightTrace::argmax(double a, double b) const {
  double best_t = a, best = (*this)(a);
  const auto [lo, hi] = inner(a, b);
  if (hi > lo) {
    const std::size_t i = range_argmax(lo, hi);
    if (w_[i] > best) best_t = t_[i], best = w_[i];
  }
  if ((*this)(b) > best) best_t = b;
  return best_t;
}

double WeightTrace::max(double a, double b) const {
  double best = std::max((*this)(a), (*this)(b));
  const auto [lo, hi] = inner(a, b);
  if (hi > lo) best = std::max(best, w_[range_argmax(lo, hi)]);
  return best;
}

double WeightTrace::min(double a, double b) const {
  double best = std::min((*this)(a), (*this)(b));
  const auto [lo, hi] = inner(a, b);
  if (hi > lo) best = std::min(best, range_min(lo, hi));
  return best;
}

bool WeightTrace::linear_on(double a, double b) const {
  const auto [lo, hi] = inner(a, b);
  return hi == lo;
}

namespace {

double linear_power(double len, double wa, double wb, double beta) {
  const double dw = wb - wa;
  const double wm = 0.5 * (wa + wb);
  const double r = dw / wm;
  if (std::abs(r) < 1e-4) return len * std::pow(wm, beta) * (1.0 + beta * (beta - 1.0) * r * r / 24.0);
  if (std::abs(beta + 1.0) < 1e-12) return len * (std::log(wb) - std::log(wa)) / dw;
  return len * (std::pow(wb, beta + 1.0) - std::pow(wa, beta + 1.0)) / ((beta + 1.0) * dw);
}

}  // namespace

double WeightTrace::power_integral(double a, double b, double beta) const {
  if (b <= a) return 0.0;
  const auto [lo, hi] = inner(a, b);
  double total = 0.0;
  double prev_t = a, prev_w = (*this)(a);
  for (std::size_t i = lo; i < hi; ++i) {
    total += linear_power(t_[i] - prev_t, prev_w, w_[i], beta);
    prev_t = t_[i];
    prev_w = w_[i];
  }
  total += linear_power(b - prev_t, prev_w, (*this)(b), beta);
  return total;
}

CantorSet::CantorSet(double length, int m, long long k, Selector select)
    : L_(length), m_(m), k_(k), select_(std::move(select)), ratio_((m - 1.0) / m) {
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "Cantor base interval is empty");
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "m-adic selection needs m >= 2");
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative number of stages");
}

int CantorSet::select(double a, double b, int level) const {
  return std::clamp(select_(a, b, level), 0, m_ - 1);
}

double CantorSet::survivor_fraction(long long level) const {
  return std::pow(ratio_, static_cast<double>(k_ - level));
}

namespace {

// Below this relative width the m-adic endpoints are no longer distinct doubles.
constexpr double kResolution = 1e-14;

double overlap(double lo, double hi, double a, double b) {
  return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

}  // namespace

bool CantorSet::in_U(double t, bool* resolved) const {
  if (resolved) *resolved = true;
  if (t < 0.0 || t > L_) return false;
  double lo = 0.0, hi = L_;
  for (long long level = 0; level < k_; ++level) {
    if (hi - lo < kResolution * L_) {
      if (resolved) *resolved = false;
      return false;
    }
    const double w = (hi - lo) / m_;
    const int j = std::clamp(static_cast<int>((t - lo) / w), 0, m_ - 1);
    const double cl = lo + j * w;
    const double ch = j == m_ - 1 ? hi : lo + (j + 1) * w;
    if (j == select(lo, hi, static_cast<int>(level))) return true;
    lo = cl;
    hi = ch;
  }
  return false;
}

double CantorSet::measure_U(double a, double b) const {
  a = std::max(a, 0.0);
  b = std::min(b, L_);
  if (b <= a) return 0.0;
  return measure_node(0.0, L_, 0, a, b);
}

double CantorSet::measure_node(double lo, double hi, long long level, double a, double b) const {
  if (b <= lo || a >= hi || level >= k_) return 0.0;
  const double in_u = 1.0 - survivor_fraction(level);
  if (a <= lo && hi <= b) return (hi - lo) * in_u;
  if (hi - lo < kResolution * L_) return overlap(lo, hi, a, b) * in_u;
  const int sel = select(lo, hi, static_cast<int>(level));
  const double w = (hi - lo) / m_;
  double total = 0.0;
  for (int j = 0; j < m_; ++j) {
    const double cl = lo + j * w;
    const double ch = j == m_ - 1 ? hi : lo + (j + 1) * w;
    if (ch <= a || cl >= b) continue;
    total += j == sel ? overlap(cl, ch, a, b) : measure_node(cl, ch, level + 1, a, b);
  }
  return total;
}

}  // namespace subhyp
