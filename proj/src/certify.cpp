#include "subhyp/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "subhyp/errors.hpp"
#include "subhyp/parallel.hpp"

namespace subhyp {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Subhyperbolic: return "subhyperbolic";
    case Verdict::Diverging: return "diverging";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  SlopeFit f;
  f.points = static_cast<int>(x.size());
  if (x.size() < 2) return f;
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ssr += r * r;
  }
  f.r2 = syy > 0 ? 1.0 - ssr / syy : 1.0;
  f.stderr_slope = x.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
  return f;
}

Verdict verdict_from_fit(const SlopeFit& fit, double eps_slope) {
  if (fit.points < 2) return Verdict::Inconclusive;
  if (fit.slope + fit.stderr_slope < -eps_slope) return Verdict::Diverging;
  if (fit.slope - fit.stderr_slope >= -eps_slope) return Verdict::Subhyperbolic;
  return Verdict::Inconclusive;
}

namespace {

class Uniform01 {
 public:
  explicit Uniform01(std::uint64_t seed) : g_(seed) {}
  double operator()() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 g_;
};

Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

class PairSampler {
 public:
  PairSampler(const PlanarDomain& domain, const CertifyOptions& opts)
      : domain_(domain), opts_(opts), rng_(opts.seed), features_(domain.feature_vertices()) {
    double acc = 0.0;
    for (std::size_t s = 0; s < domain.segment_count(); ++s) {
      acc += distance(domain.segment_start(s), domain.segment_end(s));
      cumulative_.push_back(acc);
    }
  }

  // Kind 0: near the boundary, across it where it is thin, along it elsewhere. Kind 1:
  // near a sharp boundary vertex. Kind 2: anywhere.
  std::optional<PairSample> draw(double s, int kind) {
    for (int attempt = 0; attempt < 400; ++attempt) {
      Point x;
      Point dir = unit(2.0 * std::numbers::pi * rng_());
      const double floor = opts_.clearance * s;
      if (kind == 0) {
        // Across the boundary where the complement is thinner than s, at the
        // thickest such spot among the probes, so that y lands on the far
        // side; along the boundary elsewhere.
        double best_gap = 0.0;
        Point best_base{}, best_in{};
        int thin = 0;
        Point base{}, inward{}, tangent{};
        for (int probe = 0; probe < 64 && thin < 8; ++probe) {
          const double pick = rng_() * cumulative_.back();
          const std::size_t seg = static_cast<std::size_t>(
              std::lower_bound(cumulative_.begin(), cumulative_.end(), pick) - cumulative_.begin());
          const Point a = domain_.segment_start(seg), b = domain_.segment_end(seg);
          tangent = (1.0 / distance(a, b)) * (b - a);
          inward = {-tangent.y, tangent.x};
          base = a + rng_() * (b - a);
          for (int k = 1; k <= 16; ++k) {
            const double gap = s * k / 16.0;
            if (domain_.contains(base - gap * inward)) {
              ++thin;
              if (gap > best_gap) best_gap = gap, best_base = base, best_in = inward;
              break;
            }
          }
        }
        if (thin > 0) {
          const double room = std::max(floor, s - best_gap - floor);
          x = best_base + (floor + rng_() * (room - floor)) * best_in;
          dir = unit(std::atan2(-best_in.y, -best_in.x) + (rng_() - 0.5) * std::numbers::pi / 6.0);
        } else {
          x = base + floor * (1.0 + 3.0 * rng_()) * inward;
          const double side = rng_() < 0.5 ? 0.0 : std::numbers::pi;
          dir = unit(std::atan2(tangent.y, tangent.x) + side + (rng_() - 0.5) * std::numbers::pi / 6.0);
        }
      } else if (kind == 1 && !features_.empty()) {
        const Point v = features_[std::min(features_.size() - 1,
                                           static_cast<std::size_t>(rng_() * features_.size()))];
        x = v + (2.0 * s * rng_()) * unit(2.0 * std::numbers::pi * rng_());
      } else {
        const Box& bb = domain_.bounding_box();
        x = {bb.lo.x + rng_() * bb.width(), bb.lo.y + rng_() * bb.height()};
      }
      const Point y = x + s * dir;
      auto p = make_pair(x, y, s);
      if (!p) continue;
      if (kind != 2 && !p->hard) continue;
      return p;
    }
    return std::nullopt;
  }

  std::optional<PairSample> make_pair(Point x, Point y, double s) const {
    if (!domain_.contains(x) || !domain_.contains(y)) return std::nullopt;
    const double dx = domain_.boundary_distance(x, opts_.norm);
    const double dy = domain_.boundary_distance(y, opts_.norm);
    const double floor = opts_.clearance * s;
    if (dx < floor || dy < floor) return std::nullopt;
    PairSample p;
    p.x = x;
    p.y = y;
    p.scale = s;
    p.hard = std::max(dx, dy) <= 2.0 * s;
    return p;
  }

 private:
  const PlanarDomain& domain_;
  const CertifyOptions& opts_;
  Uniform01 rng_;
  std::vector<Point> features_;
  std::vector<double> cumulative_;
};

// Upper estimate of d_α for one pair; non-finite on failure.
double evaluate(const PlanarDomain& domain, double alpha, const PairSample& p,
                const CertifyOptions& opts, bool accurate) {
  const double dx = domain.boundary_distance(p.x, opts.norm);
  const double dy = domain.boundary_distance(p.y, opts.norm);
  if (std::max(dx, dy) > 2.0 * p.scale)
    return segment_weighted_length(domain, p.x, p.y, alpha, opts.norm);
  MetricOptions mo;
  mo.norm = opts.norm;
  mo.local = true;
  mo.h = p.scale * opts.h_fraction;
  mo.max_levels = accurate ? 4 : 1;
  mo.fine = accurate;
  mo.max_nodes = std::size_t{1} << 20;
  try {
    return subhyp_distance(domain, alpha, p.x, p.y, mo).value;
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void score(PairSample& p, double value, double alpha) {
  if (!std::isfinite(value)) return;
  if (p.distance == 0.0 || value < p.distance) p.distance = value;
  p.ratio = p.distance / std::pow(p.scale, alpha);
}

// Rigid moves of a pair, all preserving |x - y|.
std::vector<std::pair<Point, Point>> moves(const PlanarDomain& domain, const PairSample& p,
                                           double step) {
  const Point m = 0.5 * (p.x + p.y);
  const Point t = domain.nearest_boundary_tangent(m);
  const Point n{-t.y, t.x};
  const double angle = step / p.scale;
  auto rotate = [](Point v, double a) {
    return Point{std::cos(a) * v.x - std::sin(a) * v.y, std::sin(a) * v.x + std::cos(a) * v.y};
  };
  std::vector<std::pair<Point, Point>> out;
  for (Point d : {t, -1.0 * t, n, -1.0 * n}) out.push_back({p.x + step * d, p.y + step * d});
  for (double a : {angle, -angle}) {
    out.push_back({m + rotate(p.x - m, a), m + rotate(p.y - m, a)});
    out.push_back({p.x, p.x + rotate(p.y - p.x, a)});
  }
  return out;
}

PairSample climb(const PlanarDomain& domain, double alpha, PairSample start,
                 const CertifyOptions& opts, const PairSampler& sampler, std::size_t& evals) {
  PairSample best = start;
  double step = 0.25 * start.scale;
  const double min_step = start.scale / 512.0;
  for (int round = 0; round < opts.climb_rounds && step >= min_step; ++round) {
    bool improved = false;
    for (auto [x, y] : moves(domain, best, step)) {
      auto cand = sampler.make_pair(x, y, best.scale);
      if (!cand) continue;
      ++evals;
      score(*cand, evaluate(domain, alpha, *cand, opts, false), alpha);
      if (cand->ratio > best.ratio) {
        best = *cand;
        improved = true;
        break;
      }
    }
    step = improved ? 1.5 * step : 0.5 * step;
  }
  return best;
}

}  // namespace

SubhypCertificate estimate_constant(const PlanarDomain& domain, double alpha,
                                    const CertifyOptions& opts) {
  if (!(alpha > 0.0) || alpha > 1.0) throw Error(ErrorCode::BadExponent, "alpha must lie in (0,1]");
  if (opts.scales < 1 || opts.budget < 1) throw Error(ErrorCode::InvalidArgument, "empty sampling plan");
  SubhypCertificate cert;
  cert.domain = domain.name();
  cert.alpha = alpha;
  cert.theta = opts.theta > 0.0 ? opts.theta : domain.diameter() / 4.0;
  cert.eps_slope = opts.eps_slope;
  cert.seed = opts.seed;

  PairSampler sampler(domain, opts);
  const std::size_t per_scale = std::max<std::size_t>(4, opts.budget / opts.scales);
  std::vector<PairSample> pairs;
  for (int j = 1; j <= opts.scales; ++j) {
    const double s = cert.theta * std::ldexp(1.0, -j);
    const std::size_t hard = per_scale / 2;
    for (std::size_t i = 0; i < per_scale; ++i) {
      const int kind = i < hard / 2 ? 1 : (i < hard ? 0 : 2);
      if (auto p = sampler.draw(s, kind)) pairs.push_back(*p);
      else if (auto q = sampler.draw(s, 2)) pairs.push_back(*q);
    }
  }
  parallel_for(pairs.size(), [&](std::size_t i) {
    score(pairs[i], evaluate(domain, alpha, pairs[i], opts, false), alpha);
  });
  cert.evaluations = pairs.size();

  // Climb from the top pairs of every scale; each climbed pair, re-evaluated
  // accurately, replaces its start.
  auto scale_index = [&](double s) {
    const int j = static_cast<int>(std::lround(std::log2(cert.theta / s))) - 1;
    return static_cast<std::size_t>(std::clamp(j, 0, opts.scales - 1));
  };
  std::vector<std::vector<std::size_t>> by_scale(opts.scales);
  for (std::size_t i = 0; i < pairs.size(); ++i) by_scale[scale_index(pairs[i].scale)].push_back(i);
  std::vector<std::size_t> starts;
  for (auto& group : by_scale) {
    std::stable_sort(group.begin(), group.end(),
                     [&](std::size_t u, std::size_t v) { return pairs[u].ratio > pairs[v].ratio; });
    for (std::size_t i = 0; i < group.size() && i < static_cast<std::size_t>(opts.top_k); ++i)
      if (pairs[group[i]].ratio > 0.0) starts.push_back(group[i]);
  }
  std::vector<std::size_t> climb_evals(starts.size(), 0);
  std::vector<PairSample> climbed(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    const PairSample& s0 = pairs[starts[i]];
    climbed[i] = opts.climb ? climb(domain, alpha, s0, opts, sampler, climb_evals[i]) : s0;
    ++climb_evals[i];
    score(climbed[i], evaluate(domain, alpha, climbed[i], opts, true), alpha);
  });
  for (std::size_t i = 0; i < starts.size(); ++i) {
    pairs[starts[i]] = climbed[i];
    cert.evaluations += climb_evals[i];
  }

  for (int j = 0; j < opts.scales; ++j) {
    ScaleStat st;
    st.scale = cert.theta * std::ldexp(1.0, -(j + 1));
    st.pairs = by_scale[j].size();
    for (std::size_t i : by_scale[j])
      if (pairs[i].ratio > st.max_ratio) {
        st.max_ratio = pairs[i].ratio;
        st.worst = pairs[i];
      }
    cert.per_scale.push_back(st);
  }

  std::vector<double> lx, ly;
  for (const auto& st : cert.per_scale) {
    if (st.max_ratio <= 0.0) continue;
    lx.push_back(std::log(st.scale));
    ly.push_back(std::log(st.max_ratio));
    cert.C_est = std::max(cert.C_est, st.max_ratio);
  }
  cert.fit = fit_line(lx, ly);
  cert.verdict = verdict_from_fit(cert.fit, opts.eps_slope);

  std::vector<PairSample> all = pairs;
  std::stable_sort(all.begin(), all.end(),
                   [](const PairSample& u, const PairSample& v) { return u.ratio > v.ratio; });
  all.resize(std::min<std::size_t>(all.size(), 5));
  cert.worst_pairs = all;
  return cert;
}

SubhypCertificate classify_alpha(const PlanarDomain& domain, double alpha,
                                 const CertifyOptions& opts) {
  return estimate_constant(domain, alpha, opts);
}

ScanResult scan_alpha(const PlanarDomain& domain, const std::vector<double>& alphas,
                      const CertifyOptions& opts) {
  if (alphas.empty()) throw Error(ErrorCode::InvalidArgument, "empty alpha grid");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0) || alphas[i] > 1.0) throw Error(ErrorCode::BadExponent, "alpha must lie in (0,1]");
    if (i > 0 && !(alphas[i] > alphas[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "alpha grid must be sorted ascending");
  }
  ScanResult r;
  r.alphas = alphas;
  for (double a : alphas) r.certificates.push_back(estimate_constant(domain, a, opts));
  const std::size_t n = alphas.size();
  while (r.diverging_prefix < n && r.certificates[r.diverging_prefix].verdict == Verdict::Diverging)
    ++r.diverging_prefix;
  r.subhyperbolic_from = n;
  while (r.subhyperbolic_from > 0 &&
         r.certificates[r.subhyperbolic_from - 1].verdict == Verdict::Subhyperbolic)
    --r.subhyperbolic_from;
  r.lower = r.diverging_prefix > 0 ? alphas[r.diverging_prefix - 1] : 0.0;
  r.upper = r.subhyperbolic_from < n ? alphas[r.subhyperbolic_from] : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (r.certificates[i].verdict != Verdict::Subhyperbolic) continue;
    for (std::size_t j = i + 1; j < n; ++j)
      if (r.certificates[j].verdict == Verdict::Diverging) {
        r.inversions.push_back(i);
        break;
      }
  }
  return r;
}

double alpha_from_p(double p, int n) {
  if (!(p > n)) throw Error(ErrorCode::BadExponent, "p must exceed the dimension");
  return (p - n) / (p - 1.0);
}

double p_from_alpha(double alpha, int n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::BadExponent, "alpha must lie in (0,1)");
  return (n - alpha) / (1.0 - alpha);
}

ExtensionVerdict classify_extension(const PlanarDomain& domain, double p, int n,
                                    CertifyOptions opts) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 2");
  if (!(p > n) || !std::isfinite(p))
    throw Error(ErrorCode::BadExponent, "need " + std::to_string(n) + " < p < infinity");
  ExtensionVerdict v;
  v.p = p;
  v.n = n;
  v.alpha = alpha_from_p(p, n);
  if (!(opts.theta > 0.0)) {
    opts.theta = domain.diameter();
    opts.scales = std::max(opts.scales, 6);
    opts.budget = std::max<std::size_t>(opts.budget, 12 * static_cast<std::size_t>(opts.scales));
  }
  v.certificate = estimate_constant(domain, v.alpha, opts);
  v.characterization = n == 2;
  switch (v.certificate.verdict) {
    case Verdict::Subhyperbolic:
      v.extension = true;
      v.verdict = "extension domain";
      break;
    case Verdict::Diverging:
      v.extension = false;
      v.verdict = n == 2 ? "not an extension domain" : "undetermined";
      break;
    case Verdict::Inconclusive:
      v.extension = false;
      v.verdict = "inconclusive";
      break;
  }
  return v;
}

}  // namespace subhyp
