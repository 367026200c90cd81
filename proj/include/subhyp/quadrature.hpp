#pragma once

#include <array>
#include <cmath>

namespace subhyp {

namespace detail {
inline constexpr std::array<double, 5> kGaussNodes{
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
inline constexpr std::array<double, 5> kGaussWeights{
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
    0.2369268850561891};
}  // namespace detail

/// Five-point Gauss-Legendre rule for f on [a, b].
template <class F>
double gauss_legendre5(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += detail::kGaussWeights[i] * f(mid + half * detail::kGaussNodes[i]);
  return half * s;
}

/// Recursive bisection of [a, b] until the midpoint and trapezoid rules agree
/// to `rel_tol` relative; each accepted piece contributes its Simpson value.
template <class F>
double adaptive_integrate(F&& f, double a, double b, double rel_tol = 1e-6, int max_depth = 40,
                          int min_depth = 2) {
  struct Rec {
    F& f;
    double tol;
    int floor;
    double run(double u, double v, double fu, double fv, int depth) {
      const double m = 0.5 * (u + v);
      const double fm = f(m);
      const double w = v - u;
      const double trap = 0.5 * (fu + fv) * w;
      const double mid = fm * w;
      const double simpson = (trap + 2.0 * mid) / 3.0;
      if (depth <= 0) return simpson;
      if (depth <= floor && std::abs(mid - trap) <= tol * std::abs(simpson)) return simpson;
      return run(u, m, fu, fm, depth - 1) + run(m, v, fm, fv, depth - 1);
    }
  };
  Rec r{f, rel_tol, max_depth - min_depth};
  return r.run(a, b, f(a), f(b), max_depth);
}

}  // namespace subhyp
