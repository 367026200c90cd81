#include "subhyp/selfimprove.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "subhyp/errors.hpp"

namespace subhyp {

ExponentRecord compute_exponents(double alpha, double C, double eps, double separation, int n,
                                 std::optional<double> d) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::BadExponent, "alpha must lie in (0,1)", alpha);
  if (!(C >= 1.0) || !std::isfinite(C)) throw Error(ErrorCode::InvalidArgument, "C must be at least 1", C);
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive", eps);
  if (!(separation > 0.0)) throw Error(ErrorCode::InvalidArgument, "points must be distinct");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");

  ExponentRecord r;
  r.alpha = alpha;
  r.C = C;
  r.C_g = 4.0 * C;
  r.n = n;
  r.separation = separation;
  r.eps = eps;
  const double mm = std::floor(2.0 * std::pow(2.0 * C, 1.0 / (1.0 - alpha))) + 1.0;
  if (mm > 2e9) throw Error(ErrorCode::InvalidArgument, "m-adic base out of range", mm);
  r.m = static_cast<int>(mm);

  // Least k >= 1 with log(2 e^{2C} |x-y| / eps) + k log(1 - 1/m) <= 0.
  const double head = std::log(2.0 * separation / eps) + 2.0 * C;
  const double step = std::log1p(-1.0 / r.m);
  auto ok = [&](long long k) { return head + static_cast<double>(k) * step <= 0.0; };
  long long k = std::max(1LL, static_cast<long long>(std::ceil(head / -step)));
  while (k > 1 && ok(k - 1)) --k;
  while (!ok(k)) ++k;
  r.k = k;

  const double upper = C * std::pow(separation, alpha);
  const double dist = d.value_or(upper);
  r.log10_delta = std::min(std::log10(dist), alpha * (std::log10(separation) -
                                                      static_cast<double>(k) * std::log10(mm)));
  r.delta = std::pow(10.0, r.log10_delta);

  r.q_sharp = std::log(mm) / std::log(mm - (mm - 1.0) / r.C_g);
  r.q_star = 0.5 * (1.0 + r.q_sharp);
  r.q_cap = (1.0 - 0.5 * alpha) / (1.0 - alpha);
  r.q_tilde = std::min(r.q_star, r.q_cap);
  r.alpha_star = 1.0 - r.q_tilde * (1.0 - alpha);
  r.p = (n - alpha) / (1.0 - alpha);
  r.p_star = (n - r.alpha_star) / (1.0 - r.alpha_star);
  return r;
}

double tau_from_q(double alpha, double q) { return q * (alpha - 1.0) + 1.0; }

CantorSet::Selector argmax_selector(const WeightTrace& trace, int m) {
  auto shared = std::make_shared<const WeightTrace>(trace);
  return [shared, m](double a, double b, int) {
    const double t = shared->argmax(a, b);
    const double w = (b - a) / m;
    const int j = static_cast<int>(std::ceil((t - a) / w)) - 1;
    return std::clamp(j, 0, m - 1);
  };
}

namespace {

constexpr std::size_t kMaxExplicit = std::size_t{1} << 23;

struct Node {
  long long level;
  std::uint64_t index;
  double a, b;
};

// Child [a_j, b_j] of an m-adic interval; the last child ends exactly at b.
std::pair<double, double> child(double a, double b, int m, int j) {
  const double w = (b - a) / m;
  return {a + j * w, j == m - 1 ? b : a + (j + 1) * w};
}

double power_extreme(const WeightTrace& trace, double a, double b, double beta) {
  return beta < 0.0 ? std::pow(trace.min(a, b), beta) : std::pow(trace.max(a, b), beta);
}

// Upper bounds for ∫_U w^β and ∫_E w^β.
std::pair<double, double> split_integrals(const CantorDecomposition& dec, double beta) {
  double u = 0.0, e = 0.0;
  for (const auto& s : dec.selected) u += dec.trace.power_integral(s.a, s.b, beta);
  for (const auto& s : dec.residual) e += dec.trace.power_integral(s.a, s.b, beta);
  for (const auto& blk : dec.blocks) {
    const double len = blk.b - blk.a;
    const double frac = dec.cantor.survivor_fraction(blk.level);
    const double top = power_extreme(dec.trace, blk.a, blk.b, beta);
    u += len * (1.0 - frac) * top;
    e += len * frac * top;
  }
  return {u, e};
}

}  // namespace

CantorDecomposition decompose_curve(const ParamCurve& curve, double alpha,
                                    const ExponentRecord& exponents) {
  if (curve.size() < 2) throw Error(ErrorCode::DegenerateTrace, "curve has fewer than two vertices");
  const int m = exponents.m;
  if (curve.size() - 1 < static_cast<std::size_t>(8 * m))
    throw Error(ErrorCode::DegenerateTrace, "fewer than 8 trace samples per first-level interval",
                static_cast<double>(curve.size()));
  WeightTrace trace(curve.arclength, curve.weight);
  CantorSet set(curve.length(), m, exponents.k, argmax_selector(trace, m));
  CantorDecomposition dec{curve, trace, set, exponents, 0.0, 0.0, {}, {}, {}, 0.0, 1.0};

  const double L = curve.length();
  const double k = static_cast<double>(exponents.k);
  auto classify = [&](const Node& n, std::vector<Node>& next) {
    const MAdicInterval iv{n.level, n.index, n.a, n.b};
    if (static_cast<double>(n.level) >= k) {
      dec.residual.push_back(iv);
      dec.measure_E += n.b - n.a;
    } else if (trace.linear_on(n.a, n.b)) {
      dec.blocks.push_back(iv);
      dec.measure_E += (n.b - n.a) * set.survivor_fraction(n.level);
      // Selected descendants are at most |J|/m long and w is linear on J.
      const double wa = trace(n.a), wb = trace(n.b);
      const double ratio = 1.0 + std::abs(wb - wa) / (m * std::min(wa, wb));
      dec.max_oscillation = std::max(dec.max_oscillation, std::pow(ratio, 1.0 - alpha));
    } else {
      next.push_back(n);
    }
  };

  std::vector<Node> frontier, next;
  classify({0, 0, 0.0, L}, frontier);
  std::size_t explicit_count = 0;
  while (!frontier.empty()) {
    next.clear();
    for (const Node& n : frontier) {
      const int sel = set.select(n.a, n.b, static_cast<int>(n.level));
      for (int j = 0; j < m; ++j) {
        const auto [a, b] = child(n.a, n.b, m, j);
        const Node c{n.level + 1, n.index * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(j), a, b};
        if (j == sel) {
          dec.selected.push_back({c.level, c.index, a, b});
          const double osc = trace.max(a, b) / trace.min(a, b);
          dec.max_oscillation = std::max(dec.max_oscillation, std::pow(osc, 1.0 - alpha));
        } else {
          classify(c, next);
        }
      }
      explicit_count += static_cast<std::size_t>(m);
      if (explicit_count > kMaxExplicit)
        throw Error(ErrorCode::DegenerateTrace, "trace too dense for explicit m-adic expansion");
    }
    std::swap(frontier, next);
  }
  return dec;
}

CantorDecomposition cantor_decompose(const PlanarDomain& domain, double alpha, double C, Point x,
                                     Point y, double eps, const MetricOptions& metric) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::BadExponent, "alpha must lie in (0,1)", alpha);
  const double sep = distance(x, y);
  if (!(sep > 0.0)) throw Error(ErrorCode::InvalidArgument, "points must be distinct");
  const double dx = domain.boundary_distance(x, metric.norm);
  const double dy = domain.boundary_distance(y, metric.norm);
  if (std::max(dx, dy) > 2.0 * sep)
    throw Error(ErrorCode::PreconditionNotMet, "pair is not in the hard stratum max dist <= 2|x-y|",
                std::max(dx, dy) / sep);

  const GeodesicResult g = subhyp_distance(domain, alpha, x, y, metric);
  const double working = C > 0.0 ? C : std::max(1.0, g.value / std::pow(sep, alpha));
  const ExponentRecord rec = compute_exponents(alpha, working, eps, sep, 2, g.value);
  if (8.0 * rec.m > 4e6) throw Error(ErrorCode::DegenerateTrace, "m too large to sample the trace", rec.m);
  const ParamCurve curve = g.curve.resampled(domain, g.curve.length() / (8.0 * rec.m + 1.0));
  CantorDecomposition dec = decompose_curve(curve, alpha, rec);
  dec.achieved_gap = g.gap;
  dec.d_alpha = g.value;
  return dec;
}

PorosityResult porosity_check(const CantorSet& set, const std::vector<double>& centers,
                              const std::vector<double>& lengths) {
  PorosityResult r;
  const double bound = 4.0 * set.m();
  for (double c : centers) {
    for (double len : lengths) {
      const double in = set.measure_U(c - 0.5 * len, c + 0.5 * len);
      const double ratio = in > 0.0 ? len / in : std::numeric_limits<double>::infinity();
      r.worst = std::max(r.worst, ratio);
      ++r.samples;
      if (len > bound * in * (1.0 + 1e-12)) ++r.violations;
    }
  }
  return r;
}

namespace {

// Arclength interval of segment [p, q] (starting at arclength t0) inside the
// closed Euclidean disk B(c, r).
std::optional<std::pair<double, double>> segment_in_disk(Point p, Point q, double t0, Point c, double r) {
  const Point d = q - p;
  const double len = euclidean_norm(d);
  if (len == 0.0) return std::nullopt;
  const Point u = (1.0 / len) * d;
  const Point f = p - c;
  const double b = dot(f, u);
  const double disc = b * b - (dot(f, f) - r * r);
  if (disc < 0.0) return std::nullopt;
  const double s = std::sqrt(disc);
  const double lo = std::max(0.0, -b - s), hi = std::min(len, -b + s);
  if (hi <= lo) return std::nullopt;
  return std::make_pair(t0 + lo, t0 + hi);
}

std::vector<double> sample_in_U(const CantorSet& set, std::size_t count, std::mt19937_64& rng) {
  std::vector<double> out;
  std::size_t tries = 0;
  while (out.size() < count && tries < 200 * count + 1000) {
    ++tries;
    const double t = static_cast<double>(rng() >> 11) * 0x1.0p-53 * set.length();
    bool resolved = true;
    if (set.in_U(t, &resolved) && resolved) out.push_back(t);
  }
  return out;
}

}  // namespace

DecompositionReport verify_decomposition(const CantorDecomposition& dec, const VerifyOptions& opts) {
  DecompositionReport r;
  const ExponentRecord& ex = dec.exponents;
  const double sep = ex.separation;
  const double alpha = ex.alpha;
  const double L = dec.curve.length();

  const int pts = std::max(1, opts.tau_points);
  for (int i = 0; i < pts; ++i) {
    const double tau = pts == 1 ? alpha : ex.alpha_star + (alpha - ex.alpha_star) * i / (pts - 1);
    TauCheck c;
    c.tau = tau;
    c.integral = split_integrals(dec, tau - 1.0).first;
    c.constant = c.integral / std::pow(sep, tau);
    r.tau_constant = std::max(r.tau_constant, c.constant);
    r.tau_checks.push_back(c);
  }

  r.measure_E = dec.measure_E;
  r.formula_E = dec.cantor.survivor_fraction(0) * L;
  r.measure_E_error = std::abs(r.measure_E - r.formula_E) / r.formula_E;
  r.measure_exact = r.measure_E_error <= 1e-12;
  r.eps = ex.eps;
  r.lgw_holds = r.measure_E <= ex.eps;

  r.aa_integral = split_integrals(dec, alpha - 1.0).second;
  r.aa_constant = r.aa_integral / std::pow(sep, alpha);

  r.oscillation = dec.max_oscillation;
  r.oscillation_bound = std::pow(3.0, 1.0 - alpha);
  r.oscillation_holds = r.oscillation <= r.oscillation_bound * (1.0 + 1e-12);

  std::mt19937_64 rng(opts.seed);
  const auto centers = sample_in_U(dec.cantor, opts.centers, rng);
  std::vector<double> lengths;
  for (int i = 0; i < opts.lengths; ++i) lengths.push_back(2.0 * L * std::ldexp(1.0, -i));
  const PorosityResult por = porosity_check(dec.cantor, centers, lengths);
  r.porosity = por.worst;
  r.porosity_bound = 4.0 * ex.m;
  r.porosity_samples = por.samples;
  r.porosity_violations = por.violations;

  const auto& v = dec.curve.vertices;
  const auto& arc = dec.curve.arclength;
  for (double t : sample_in_U(dec.cantor, opts.ball_centers, rng)) {
    const Point c = dec.curve.at(t);
    for (int i = 0; i < opts.radii; ++i) {
      const double rad = sep * std::ldexp(1.0, -i);
      double inside = 0.0;
      for (std::size_t s = 0; s + 1 < v.size(); ++s) {
        if (auto iv = segment_in_disk(v[s], v[s + 1], arc[s], c, rad))
          inside += dec.cantor.measure_U(iv->first, iv->second);
      }
      if (inside > 0.0) r.regularity = std::max(r.regularity, 2.0 * rad / inside);
      ++r.regularity_samples;
    }
  }
  r.length_ratio = L / sep;
  return r;
}

ReverseHolderProfile reverse_holder_exponent(const std::function<double(double, double)>& integral,
                                             double length, int m, int k, std::vector<double> q_grid,
                                             double cap) {
  if (m < 2 || k < 0) throw Error(ErrorCode::InvalidArgument, "need m >= 2 and k >= 0");
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "empty interval");
  if (std::pow(static_cast<double>(m), k) > static_cast<double>(1 << 22))
    throw Error(ErrorCode::InvalidArgument, "m^k exceeds the cell budget");
  if (q_grid.empty())
    for (int i = 0; i <= 40; ++i) q_grid.push_back(1.0 + 0.05 * i);

  std::size_t cells = 1;
  for (int j = 0; j < k; ++j) cells *= static_cast<std::size_t>(m);

  // means[j][i]: average of g over the i-th interval of level j; lows the
  // smallest level-k cell average inside it.
  std::vector<std::vector<double>> means(k + 1), lows(k + 1);
  means[k].resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = length * static_cast<double>(i) / static_cast<double>(cells);
    const double b = i + 1 == cells ? length : length * static_cast<double>(i + 1) / static_cast<double>(cells);
    const double mean = integral(a, b) / (b - a);
    if (!(mean > 0.0) || !std::isfinite(mean))
      throw Error(ErrorCode::DegenerateTrace, "weight averages must be positive and finite", mean);
    means[k][i] = mean;
  }
  lows[k] = means[k];
  for (int j = k - 1; j >= 0; --j) {
    const std::size_t count = means[j + 1].size() / static_cast<std::size_t>(m);
    means[j].assign(count, 0.0);
    lows[j].assign(count, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < count; ++i) {
      double sum = 0.0;
      for (int c = 0; c < m; ++c) {
        sum += means[j + 1][i * m + c];
        lows[j][i] = std::min(lows[j][i], lows[j + 1][i * m + c]);
      }
      means[j][i] = sum / m;
    }
  }

  ReverseHolderProfile p;
  p.m = m;
  p.k = k;
  p.length = length;
  for (int j = 0; j <= k; ++j)
    for (std::size_t i = 0; i < means[j].size(); ++i) p.C_g = std::max(p.C_g, means[j][i] / lows[j][i]);
  p.cap = cap > 0.0 ? cap : 10.0 * p.C_g;

  std::vector<double> maximal = means[0];
  for (int j = 1; j <= k; ++j) {
    std::vector<double> next(means[j].size());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::max(maximal[i / m], means[j][i]);
    maximal = std::move(next);
  }
  const double avg = means[0][0];
  for (double q : q_grid) {
    double sum = 0.0;
    for (double v : maximal) sum += std::pow(v / avg, q);
    const double ct = std::pow(sum / static_cast<double>(cells), 1.0 / q);
    p.q.push_back(q);
    p.C_tilde.push_back(ct);
    if (ct <= p.cap && q > p.q_max) {
      p.q_max = q;
      p.C_at_q_max = ct;
    }
  }
  return p;
}

TauResult self_improve_tau(const PlanarDomain& domain, double alpha,
                           const std::vector<ParamCurve>& curves, double C, const TauOptions& opts) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::BadExponent, "alpha must lie in (0,1)", alpha);
  if (curves.empty()) throw Error(ErrorCode::InvalidArgument, "empty curve family");
  TauResult result;
  const double q_cap = (1.0 - 0.5 * alpha) / (1.0 - alpha);
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const ParamCurve& original = curves[ci];
    if (original.size() < 2 || !(original.length() > 0.0))
      throw Error(ErrorCode::DegenerateTrace, "curve has no length");
    const double step = opts.h > 0.0 ? opts.h : original.length() / 256.0;
    const ParamCurve curve = original.resampled(domain, step);
    const auto prefix = weighted_prefix(curve, alpha, domain);

    double worst = 0.0;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      for (std::size_t j = i + 1; j < curve.size(); ++j) {
        const double chord = distance(curve.vertices[i], curve.vertices[j]);
        if (chord == 0.0) continue;
        const double ratio = (prefix[j] - prefix[i]) / std::pow(chord, alpha);
        if (ratio > worst) worst = ratio, wi = i, wj = j;
      }
    }
    if (worst > C) {
      std::ostringstream msg;
      msg << "curve " << ci << " arc between vertices " << wi << " (" << curve.vertices[wi].x << ","
          << curve.vertices[wi].y << ") and " << wj << " (" << curve.vertices[wj].x << ","
          << curve.vertices[wj].y << ") needs C = " << worst;
      throw Error(ErrorCode::NotStronglySubhyperbolic, msg.str(), worst);
    }

    const WeightTrace trace(curve.arclength, curve.weight);
    const auto profile = reverse_holder_exponent(
        [&](double a, double b) { return trace.power_integral(a, b, alpha - 1.0); }, curve.length(),
        opts.m, opts.k);

    TauCurveReport rep;
    rep.separation = distance(curve.front(), curve.back());
    rep.length = curve.length();
    rep.alpha_length = prefix.back();
    rep.q_tilde = profile.q_max;
    rep.q = std::max(1.0, std::min(profile.q_max, q_cap));
    rep.tau = tau_from_q(alpha, rep.q);
    rep.C1 = profile.q_max > 0.0 ? profile.C_at_q_max : profile.C_tilde.front();
    rep.C2 = rep.C1 * C;
    rep.tau_length = weighted_length(curve, rep.tau, domain);
    rep.bound = std::pow(rep.C2, rep.q) * std::pow(rep.separation, rep.tau);
    rep.holds = rep.tau_length <= rep.bound;
    result.tau = std::min(result.tau, rep.tau);
    result.constant = std::max(result.constant, std::pow(rep.C2, rep.q));
    result.curves.push_back(rep);
  }
  return result;
}

}  // namespace subhyp
