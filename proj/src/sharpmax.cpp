#include "subhyp/sharpmax.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "subhyp/certify.hpp"
#include "subhyp/errors.hpp"
#include "subhyp/parallel.hpp"
#include "subhyp/selfimprove.hpp"

namespace subhyp {

std::size_t ScalarField::inside_count() const {
  return static_cast<std::size_t>(std::count_if(inside.begin(), inside.end(), [](unsigned char c) { return c != 0; }));
}

ScalarField ScalarField::with_values(std::vector<double> v) const {
  ScalarField out;
  out.origin = origin;
  out.h = h;
  out.nx = nx;
  out.ny = ny;
  out.inside = inside;
  out.values = std::move(v);
  return out;
}

ScalarField sample_field(const PlanarDomain& domain, const std::function<double(Point)>& f, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive", h);
  const Box& bb = domain.bounding_box();
  ScalarField field;
  field.origin = bb.lo;
  field.h = h;
  field.nx = std::max(1, static_cast<int>(std::ceil(bb.width() / h - 1e-9)));
  field.ny = std::max(1, static_cast<int>(std::ceil(bb.height() / h - 1e-9)));
  const std::size_t n = static_cast<std::size_t>(field.nx) * static_cast<std::size_t>(field.ny);
  field.values.assign(n, 0.0);
  field.inside.assign(n, 0);
  for (int j = 0; j < field.ny; ++j)
    for (int i = 0; i < field.nx; ++i) {
      const Point c = field.center(i, j);
      if (!domain.contains(c)) continue;
      field.inside[field.index(i, j)] = 1;
      const double v = f(c);
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "function is not finite on the domain");
      field.values[field.index(i, j)] = v;
    }
  if (field.inside_count() < kMinInsideNodes)
    throw Error(ErrorCode::ResolutionTooCoarse, "fewer than 9 grid cells inside the domain", h);
  return field;
}

ScalarField sample_field(const PlanarDomain& domain, const FunctionSpec& f, double h) {
  ScalarField field = sample_field(domain, [&](Point p) { return f(p); }, h);
  field.source = f;
  return field;
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

const FunctionSpec& require_source(const ScalarField& field) {
  if (!field.source) throw Error(ErrorCode::MissingDerivatives, "field has no analytic source");
  return *field.source;
}

}  // namespace

ScalarField derivative_norm_field(const ScalarField& field, int k) {
  const FunctionSpec& f = require_source(field);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "derivative order must be at least 1");
  std::vector<std::pair<FunctionSpec, double>> parts;
  for (int a = 0; a <= k; ++a) parts.push_back({f.derivative(a, k - a), binomial(k, a)});
  std::vector<double> v(field.values.size(), 0.0);
  for (int j = 0; j < field.ny; ++j)
    for (int i = 0; i < field.nx; ++i) {
      if (!field.is_inside(i, j)) continue;
      double s = 0.0;
      for (const auto& [d, w] : parts) {
        const double x = d(field.center(i, j));
        s += w * x * x;
      }
      v[field.index(i, j)] = std::sqrt(s);
    }
  return field.with_values(std::move(v));
}

double PolyApprox::operator()(Point p) const {
  double total = 0.0;
  for (std::size_t t = 0; t < exponents.size(); ++t)
    total += coefficients[t] * std::pow(p.x - center.x, exponents[t].first) *
             std::pow(p.y - center.y, exponents[t].second);
  return total;
}

namespace {

struct Block {
  int i0, i1, j0, j1;
  Point center;
  double scale;    // half-width used to normalize the monomials
  double measure;  // |Q|
};

std::vector<std::pair<int, int>> basis(int k) {
  std::vector<std::pair<int, int>> e;
  for (int d = 0; d < k; ++d)
    for (int a = d; a >= 0; --a) e.push_back({a, d - a});
  return e;
}

double ipow(double v, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= v;
  return r;
}

struct Sample {
  double u, v, f;
};

// Weighted least squares in the normalized monomials; returns coefficients
// of the normalized basis.
std::vector<double> weighted_fit(const std::vector<Sample>& pts, const std::vector<double>& w,
                                 const std::vector<std::pair<int, int>>& e) {
  const std::size_t d = e.size();
  if (d == 1) {
    double sw = 0.0, sf = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) sw += w[i], sf += w[i] * pts[i].f;
    return {sw > 0.0 ? sf / sw : 0.0};
  }
  const auto n = static_cast<Eigen::Index>(pts.size());
  const auto dd = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd phi(n, dd);
  Eigen::VectorXd f(n), wv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Sample& s = pts[static_cast<std::size_t>(i)];
    for (std::size_t t = 0; t < d; ++t)
      phi(i, static_cast<Eigen::Index>(t)) = ipow(s.u, e[t].first) * ipow(s.v, e[t].second);
    f[i] = s.f;
    wv[i] = w[static_cast<std::size_t>(i)];
  }
  const Eigen::MatrixXd G = phi.transpose() * wv.asDiagonal() * phi;
  const auto cod = G.completeOrthogonalDecomposition();
  Eigen::VectorXd c = cod.solve(phi.transpose() * wv.cwiseProduct(f));
  for (int round = 0; round < 2; ++round) {
    const Eigen::VectorXd r = f - phi * c;
    c += cod.solve(phi.transpose() * wv.cwiseProduct(r));
  }
  return {c.data(), c.data() + c.size()};
}

double eval_normalized(const std::vector<double>& c, const std::vector<std::pair<int, int>>& e, double u,
                       double v) {
  double s = 0.0;
  for (std::size_t t = 0; t < e.size(); ++t) s += c[t] * ipow(u, e[t].first) * ipow(v, e[t].second);
  return s;
}

LocalApprox fit_block(const ScalarField& field, const Block& b, int k, double q) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (!(q >= 1.0)) throw Error(ErrorCode::InvalidArgument, "norm exponent must be at least 1", q);
  std::vector<Sample> pts;
  for (int j = b.j0; j <= b.j1; ++j)
    for (int i = b.i0; i <= b.i1; ++i) {
      if (!field.is_inside(i, j)) continue;
      const Point c = field.center(i, j);
      pts.push_back({(c.x - b.center.x) / b.scale, (c.y - b.center.y) / b.scale, field.value(i, j)});
    }
  if (pts.empty()) throw Error(ErrorCode::EmptyIntersection, "cube misses every inside cell");

  const auto e = basis(k);
  std::vector<double> w(pts.size(), 1.0);
  std::vector<double> coef = weighted_fit(pts, w, e);
  std::vector<double> res(pts.size());
  auto residuals = [&](const std::vector<double>& c) {
    double sup = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      res[i] = pts[i].f - eval_normalized(c, e, pts[i].u, pts[i].v);
      sup = std::max(sup, std::abs(res[i]));
    }
    return sup;
  };
  double sup = residuals(coef);

  if (std::isinf(q)) {
    std::vector<double> best = coef;
    double best_sup = sup;
    for (int round = 0; round < 5 && sup > 0.0; ++round) {
      double total = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) total += (w[i] *= std::abs(res[i]));
      if (!(total > 0.0)) break;
      for (double& x : w) x /= total;
      coef = weighted_fit(pts, w, e);
      sup = residuals(coef);
      if (sup < best_sup) best_sup = sup, best = coef;
    }
    coef = best;
    residuals(coef);
    const auto [lo, hi] = std::minmax_element(res.begin(), res.end());
    coef[0] += 0.5 * (*lo + *hi);
    sup = residuals(coef);
  }

  LocalApprox out;
  out.cells = pts.size();
  if (std::isinf(q)) {
    out.E = sup;
  } else {
    double s = 0.0;
    for (double r : res) s += std::pow(std::abs(r), q);
    out.E = std::pow(s * field.h * field.h / b.measure, 1.0 / q);
  }
  out.poly.k = k;
  out.poly.center = b.center;
  out.poly.exponents = e;
  for (std::size_t t = 0; t < e.size(); ++t)
    out.poly.coefficients.push_back(coef[t] / std::pow(b.scale, e[t].first + e[t].second));
  out.poly.residual = out.E;
  return out;
}

// Mean absolute deviation from the mean over the inside cells of a block,
// the k = 1 case of fit_block with q = 1.
double l1_constant(const ScalarField& field, const Block& b) {
  double sum = 0.0;
  std::size_t n = 0;
  for (int j = b.j0; j <= b.j1; ++j)
    for (int i = b.i0; i <= b.i1; ++i)
      if (field.is_inside(i, j)) sum += field.value(i, j), ++n;
  if (n == 0) throw Error(ErrorCode::EmptyIntersection, "cube misses every inside cell");
  const double mean = sum / static_cast<double>(n);
  double dev = 0.0;
  for (int j = b.j0; j <= b.j1; ++j)
    for (int i = b.i0; i <= b.i1; ++i)
      if (field.is_inside(i, j)) dev += std::abs(field.value(i, j) - mean);
  return dev * field.h * field.h / b.measure;
}

Block cell_block(const ScalarField& field, int i, int j, double r) {
  const int m = static_cast<int>(std::floor(r / field.h + 1e-9));
  Block b;
  b.i0 = std::max(0, i - m);
  b.i1 = std::min(field.nx - 1, i + m);
  b.j0 = std::max(0, j - m);
  b.j1 = std::min(field.ny - 1, j + m);
  b.center = field.center(i, j);
  b.scale = (m + 0.5) * field.h;
  const double side = (2 * m + 1) * field.h;
  b.measure = side * side;
  return b;
}

}  // namespace

LocalApprox local_best_approx(const ScalarField& field, const Cube& Q, int k, double q) {
  if (!(Q.radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "cube radius must be positive");
  const double slack = 1e-12 * field.h;
  Block b;
  b.i0 = std::max(0, static_cast<int>(std::ceil((Q.center.x - Q.radius - field.origin.x) / field.h - 0.5 - slack)));
  b.i1 = std::min(field.nx - 1, static_cast<int>(std::floor((Q.center.x + Q.radius - field.origin.x) / field.h - 0.5 + slack)));
  b.j0 = std::max(0, static_cast<int>(std::ceil((Q.center.y - Q.radius - field.origin.y) / field.h - 0.5 - slack)));
  b.j1 = std::min(field.ny - 1, static_cast<int>(std::floor((Q.center.y + Q.radius - field.origin.y) / field.h - 0.5 + slack)));
  b.center = Q.center;
  b.scale = Q.radius;
  b.measure = 4.0 * Q.radius * Q.radius;
  if (b.i0 > b.i1 || b.j0 > b.j1) throw Error(ErrorCode::EmptyIntersection, "cube misses the grid");
  return fit_block(field, b, k, q);
}

std::vector<double> dyadic_radii(double h, int jmin, int jmax) {
  std::vector<double> r;
  for (int j = jmin; j <= jmax; ++j) r.push_back(std::ldexp(h, j));
  return r;
}

std::vector<double> default_radii(double h, double limit) {
  std::vector<double> r;
  for (int j = -1; std::ldexp(h, j) <= limit * (1.0 + 1e-12); ++j) r.push_back(std::ldexp(h, j));
  return r;
}

MaximalField sharp_maximal(const ScalarField& field, int k, const std::vector<double>& radii) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  MaximalField out{field.with_values(std::vector<double>(field.values.size(), 0.0)), radii,
                   std::vector<double>(field.values.size(), 0.0)};
  parallel_for(static_cast<std::size_t>(field.ny), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < field.nx; ++i) {
      if (!field.is_inside(i, j)) continue;
      double best = 0.0, best_r = 0.0;
      for (double r : radii) {
        const Block b = cell_block(field, i, j, r);
        const double E = k == 1 ? l1_constant(field, b) : fit_block(field, b, k, 1.0).E;
        const double v = E / std::pow(r, k);
        if (v > best) best = v, best_r = r;
      }
      out.field.values[field.index(i, j)] = best;
      out.best_radius[field.index(i, j)] = best_r;
    }
  });
  return out;
}

MaximalField hl_maximal(const ScalarField& field, const std::vector<double>& radii) {
  const int nx = field.nx, ny = field.ny;
  std::vector<double> sat(static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(ny + 1), 0.0);
  auto at = [&](int i, int j) -> double& { return sat[static_cast<std::size_t>(j) * (nx + 1) + i]; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double v = field.is_inside(i, j) ? std::abs(field.value(i, j)) : 0.0;
      at(i + 1, j + 1) = v + at(i, j + 1) + at(i + 1, j) - at(i, j);
    }
  MaximalField out{field.with_values(std::vector<double>(field.values.size(), 0.0)), radii,
                   std::vector<double>(field.values.size(), 0.0)};
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (!field.is_inside(i, j)) continue;
      double best = 0.0, best_r = 0.0;
      for (double r : radii) {
        const int m = static_cast<int>(std::floor(r / field.h + 1e-9));
        const int i0 = std::max(0, i - m), i1 = std::min(nx, i + m + 1);
        const int j0 = std::max(0, j - m), j1 = std::min(ny, j + m + 1);
        const double s = at(i1, j1) - at(i0, j1) - at(i1, j0) + at(i0, j0);
        const double cells = static_cast<double>(2 * m + 1) * static_cast<double>(2 * m + 1);
        const double v = s / cells;
        if (v > best) best = v, best_r = r;
      }
      out.field.values[field.index(i, j)] = best;
      out.best_radius[field.index(i, j)] = best_r;
    }
  return out;
}

double lq_norm(const ScalarField& field, double q) {
  double s = 0.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    if (!field.inside[i]) continue;
    const double v = std::abs(field.values[i]);
    if (std::isinf(q)) s = std::max(s, v);
    else s += std::pow(v, q);
  }
  return std::isinf(q) ? s : std::pow(s * field.h * field.h, 1.0 / q);
}

std::vector<std::pair<Point, Point>> sample_pairs(const PlanarDomain& domain, const std::vector<double>& scales,
                                                  std::size_t per_scale, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  auto u01 = [&] { return static_cast<double>(g() >> 11) * 0x1.0p-53; };
  const Box& bb = domain.bounding_box();
  std::vector<std::pair<Point, Point>> out;
  for (double s : scales) {
    std::size_t got = 0;
    for (int attempt = 0; attempt < 100000 && got < per_scale; ++attempt) {
      const Point x{bb.lo.x + u01() * bb.width(), bb.lo.y + u01() * bb.height()};
      const double a = 2.0 * 3.141592653589793 * u01();
      const Point y = x + s * Point{std::cos(a), std::sin(a)};
      if (!domain.contains(x) || !domain.contains(y)) continue;
      out.push_back({x, y});
      ++got;
    }
  }
  return out;
}

TaylorReport taylor_remainder_check(const ScalarField& field, const PlanarDomain& domain, double alpha, int k,
                                    const std::vector<std::pair<Point, Point>>& pairs,
                                    const TaylorOptions& opts) {
  const FunctionSpec& f = require_source(field);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const ExponentRecord ex = compute_exponents(alpha, opts.C, 1.0, 1.0, 2);
  TaylorReport rep;
  rep.p = ex.p;
  rep.p_star = ex.p_star;
  rep.lambda = opts.lambda > 0.0 ? opts.lambda : 4.0 * std::exp(2.0 * opts.C);

  std::map<std::pair<int, int>, FunctionSpec> d;
  for (int a = 0; a <= k; ++a)
    for (int b = 0; a + b <= k; ++b) d.emplace(std::make_pair(a, b), f.derivative(a, b));
  const ScalarField grad_source = field;  // only the source is used
  const Box& bb = domain.bounding_box();

  for (const auto& [x, y] : pairs) {
    const double s = distance(x, y);
    if (!(s > 0.0)) continue;
    const double half = rep.lambda * s;
    const Box box{{std::max(bb.lo.x, x.x - half), std::max(bb.lo.y, x.y - half)},
                  {std::min(bb.hi.x, x.x + half), std::min(bb.hi.y, x.y + half)}};
    const int n = std::max(4, opts.cells);
    const double cw = box.width() / n, ch = box.height() / n;
    double integral = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Point c{box.lo.x + (i + 0.5) * cw, box.lo.y + (j + 0.5) * ch};
        if (!domain.contains(c)) continue;
        double g2 = 0.0;
        for (int a = 0; a <= k; ++a) {
          const double v = d.at({a, k - a})(c);
          g2 += binomial(k, a) * v * v;
        }
        integral += std::pow(g2, 0.5 * rep.p_star) * cw * ch;
      }
    const double local = std::pow(integral, 1.0 / rep.p_star);
    const Point diff = x - y;
    for (int bx = 0; bx < k; ++bx)
      for (int by = 0; bx + by < k; ++by) {
        double ty = 0.0;
        for (int gx = bx; gx < k; ++gx)
          for (int gy = by; gx + gy < k; ++gy)
            ty += d.at({gx, gy})(y) * std::pow(diff.x, gx - bx) * std::pow(diff.y, gy - by) /
                  (factorial(gx - bx) * factorial(gy - by));
        TaylorTerm t;
        t.x = x;
        t.y = y;
        t.scale = s;
        t.bx = bx;
        t.by = by;
        t.lhs = std::abs(d.at({bx, by})(x) - ty);
        t.rhs = std::pow(s, k - bx - by - 2.0 / rep.p_star) * local;
        t.ratio = t.rhs > 0.0 ? t.lhs / t.rhs : (t.lhs > 0.0 ? kInfinityNorm : 0.0);
        rep.terms.push_back(t);
      }
  }
  (void)grad_source;

  for (const TaylorTerm& t : rep.terms) {
    auto it = std::find_if(rep.scales.begin(), rep.scales.end(),
                           [&](double s) { return std::abs(s - t.scale) <= 1e-9 * s; });
    if (it == rep.scales.end()) {
      rep.scales.push_back(t.scale);
      rep.max_ratio.push_back(t.ratio);
    } else {
      double& m = rep.max_ratio[static_cast<std::size_t>(it - rep.scales.begin())];
      m = std::max(m, t.ratio);
    }
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.scales.size(); ++i)
    if (rep.max_ratio[i] > 0.0 && std::isfinite(rep.max_ratio[i])) {
      lx.push_back(std::log(1.0 / rep.scales[i]));
      ly.push_back(std::log(rep.max_ratio[i]));
    }
  if (lx.size() >= 2) rep.slope = fit_line(lx, ly).slope;
  return rep;
}

Cor2Report cor2_check(const ScalarField& field, const PlanarDomain& domain, int k, double p,
                      const std::vector<double>& radii, const Cor2Options& opts) {
  if (!(p > 2.0) || !std::isfinite(p)) throw Error(ErrorCode::BadExponent, "need 2 < p < inf", p);
  const double alpha = (p - 2.0) / (p - 1.0);
  const ExponentRecord ex = compute_exponents(alpha, opts.C, 1.0, 1.0, 2);
  Cor2Report rep;
  rep.p = p;
  rep.p_star = ex.p_star;
  rep.theta = opts.theta > 0.0 ? opts.theta : domain.diameter() / 4.0;

  std::vector<double> small, large;
  for (double r : radii) (r <= rep.theta ? small : large).push_back(r);
  const ScalarField grad = derivative_norm_field(field, k);
  std::vector<double> gp(grad.values.size());
  for (std::size_t i = 0; i < gp.size(); ++i) gp[i] = std::pow(grad.values[i], rep.p_star);
  const MaximalField mg = hl_maximal(grad.with_values(std::move(gp)), radii);
  const MaximalField mf = hl_maximal(field, radii);
  const MaximalField ls = small.empty() ? MaximalField{field.with_values(std::vector<double>(field.values.size(), 0.0)), {}, {}}
                                        : sharp_maximal(field, k, small);
  const MaximalField ll = large.empty() ? MaximalField{field.with_values(std::vector<double>(field.values.size(), 0.0)), {}, {}}
                                        : sharp_maximal(field, k, large);
  const double theta_k = std::pow(rep.theta, -k);

  rep.ratio.assign(field.values.size(), std::numeric_limits<double>::quiet_NaN());
  auto quotient = [](double a, double b) { return b > 0.0 ? a / b : (a > 1e-12 ? kInfinityNorm : 0.0); };
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    if (!field.inside[i]) continue;
    const double A = std::pow(mg.field.values[i], 1.0 / rep.p_star);
    const double B = theta_k * mf.field.values[i];
    const double lhs = std::max(ls.field.values[i], ll.field.values[i]);
    rep.ratio[i] = quotient(lhs, A + B);
    rep.max_ratio = std::max(rep.max_ratio, rep.ratio[i]);
    rep.max_small = std::max(rep.max_small, quotient(ls.field.values[i], A));
    rep.max_large = std::max(rep.max_large, quotient(ll.field.values[i], B));
    ++rep.points;
  }
  return rep;
}

ExtensionCheck extension_criterion(const std::function<double(Point)>& f, const PlanarDomain& domain, int k,
                                   double q, double h) {
  if (!(q > 1.0)) throw Error(ErrorCode::InvalidArgument, "q must exceed 1", q);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  ExtensionCheck r;
  r.h = h;
  r.q = q;
  r.k = k;
  const double diam = domain.diameter();
  r.sigma = regularity_constants(domain, h, diam / 4.0).sigma;
  r.sigma_fine = regularity_constants(domain, 0.5 * h, diam / 4.0).sigma;
  if (!std::isfinite(r.sigma_fine) || r.sigma_fine > 2.0 * r.sigma)
    throw Error(ErrorCode::NotRegular, "regularity constant diverges under refinement", r.sigma_fine);

  auto norms = [&](double hh) {
    const ScalarField field = sample_field(domain, f, hh);
    const MaximalField sharp = sharp_maximal(field, k, default_radii(hh, diam));
    return std::make_pair(lq_norm(field, q), lq_norm(sharp.field, q));
  };
  std::tie(r.f_norm, r.sharp_norm) = norms(h);
  std::tie(r.f_norm_fine, r.sharp_norm_fine) = norms(0.5 * h);
  const double tiny = 1e-9 * std::max(1.0, r.f_norm);
  if (r.sharp_norm <= tiny && r.sharp_norm_fine <= tiny) {
    r.growth = 1.0;
  } else {
    r.growth = r.sharp_norm > 0.0 ? r.sharp_norm_fine / r.sharp_norm : kInfinityNorm;
  }
  const bool finite = std::isfinite(r.f_norm) && std::isfinite(r.sharp_norm) &&
                      std::isfinite(r.f_norm_fine) && std::isfinite(r.sharp_norm_fine);
  r.stable = finite && std::abs(r.growth - 1.0) <= 0.1;
  r.extendable = r.stable;
  r.verdict = r.extendable ? "extendable at grid scale" : "not extendable at grid scale";
  return r;
}

ExtensionCheck extension_criterion(const FunctionSpec& f, const PlanarDomain& domain, int k, double q,
                                   double h) {
  return extension_criterion([&](Point p) { return f(p); }, domain, k, q, h);
}

}  // namespace subhyp
