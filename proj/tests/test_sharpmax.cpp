#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "subhyp/catalog.hpp"
#include "subhyp/errors.hpp"
#include "subhyp/sharpmax.hpp"

using namespace subhyp;

namespace {

double peak(const ScalarField& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (f.inside[i]) m = std::max(m, f.values[i]);
  return m;
}

}  // namespace

TEST_SUITE("sharpmax") {
  TEST_CASE("function expressions") {
    const FunctionSpec f = FunctionSpec::parse("3x^2 y - (x - y)^2 + 2 sin(2 pi x) cos(y)");
    const Point p{0.3, -0.7};
    const double exact = 3 * 0.09 * -0.7 - 1.0 + 2 * std::sin(2 * M_PI * 0.3) * std::cos(-0.7);
    CHECK(f(p) == doctest::Approx(exact));
    CHECK(f.derivative(1, 0, p) == doctest::Approx(6 * 0.3 * -0.7 - 2 * 1.0 + 4 * M_PI * std::cos(2 * M_PI * 0.3) * std::cos(-0.7)));
    CHECK(FunctionSpec::parse("x^3 y + 2").polynomial_degree() == 4);
    CHECK(FunctionSpec::parse("sin(x)").polynomial_degree() == -1);
    CHECK(FunctionSpec::parse("x^2").derivative(3, 0).is_zero());
    CHECK_THROWS_AS(FunctionSpec::parse("x +"), Error);
    CHECK_THROWS_AS(FunctionSpec::parse("exp(x)"), Error);
  }

  TEST_CASE("Chebyshev constant of x^2") {
    const PlanarDomain box("box", Polygon{{-2, -2}, {2, -2}, {2, 2}, {-2, 2}});
    const ScalarField f = sample_field(box, FunctionSpec::parse("x^2"), 1.0 / 64.0);
    CHECK(local_best_approx(f, Cube{{0, 0}, 1}, 2, kInfinityNorm).E ==
          doctest::Approx(oracle::kChebyshevSquare).epsilon(0.02));
    const ScalarField g = sample_field(make_square(), FunctionSpec::parse("x^2"), 1.0 / 64.0);
    CHECK(local_best_approx(g, Cube{{0.5, 0.5}, 0.5}, 2, kInfinityNorm).E ==
          doctest::Approx(oracle::kChebyshevSquareUnit).epsilon(0.05));
  }

  TEST_CASE("polynomials of degree below k have vanishing sharp function") {
    const PlanarDomain sq = make_square();
    const char* polys[] = {"2", "1 - 3x + y", "x^2 - 2 x y + 5y - 1"};
    for (int k = 1; k <= 3; ++k) {
      const ScalarField f = sample_field(sq, FunctionSpec::parse(polys[k - 1]), 1.0 / 16.0);
      CHECK(peak(sharp_maximal(f, k, default_radii(f.h, 1.0)).field) <= 1e-9);
    }
  }

  TEST_CASE("fitted polynomial reproduces the input") {
    const ScalarField f = sample_field(make_square(), FunctionSpec::parse("1 + 2x - y"), 1.0 / 16.0);
    const LocalApprox a = local_best_approx(f, Cube{{0.5, 0.5}, 0.25}, 2, 2.0);
    CHECK(a.E == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.poly({0.6, 0.4}) == doctest::Approx(1.8));
    CHECK_THROWS_AS(local_best_approx(f, Cube{{5, 5}, 0.1}, 1, 1.0), Error);
  }

  TEST_CASE("maximal function dominates the field") {
    const ScalarField f = sample_field(make_disk(), FunctionSpec::parse("sin(3x) y"), 1.0 / 16.0);
    const MaximalField m = hl_maximal(f, default_radii(f.h, 2.0));
    for (std::size_t i = 0; i < f.values.size(); ++i)
      if (f.inside[i]) CHECK(m.field.values[i] >= std::abs(f.values[i]) - 1e-12);
  }

  TEST_CASE("sampling errors") {
    CHECK_THROWS_AS(sample_field(make_square(), FunctionSpec::parse("x"), 0.5), Error);
    const ScalarField raw = sample_field(make_square(), [](Point p) { return p.x; }, 0.1);
    CHECK_THROWS_AS(derivative_norm_field(raw, 1), Error);
  }

  TEST_CASE("derivative norm") {
    const ScalarField f = sample_field(make_square(), FunctionSpec::parse("3x + 4y"), 0.1);
    const ScalarField g = derivative_norm_field(f, 1);
    CHECK(g.value(3, 3) == doctest::Approx(5.0));
  }

  TEST_CASE("norms") {
    const ScalarField f = sample_field(make_square(), [](Point) { return 2.0; }, 0.125);
    CHECK(lq_norm(f, 1.0) == doctest::Approx(2.0));
    CHECK(lq_norm(f, 2.0) == doctest::Approx(2.0));
    CHECK(lq_norm(f, kInfinityNorm) == 2.0);
  }

  TEST_CASE("Taylor remainder ratios stay bounded") {
    const PlanarDomain sq = make_square();
    const ScalarField f = sample_field(sq, FunctionSpec::parse("sin(3x) cos(2y)"), 1.0 / 16.0);
    const auto pairs = sample_pairs(sq, {0.2, 0.1, 0.05}, 8, 5);
    const TaylorReport r = taylor_remainder_check(f, sq, 0.5, 2, pairs);
    CHECK(r.scales.size() == 3);
    CHECK(r.slope <= 0.05);
    CHECK(r.lambda == doctest::Approx(4.0 * std::exp(2.0)));
  }

  TEST_CASE("pointwise maximal bound") {
    const PlanarDomain sq = make_square();
    const ScalarField f = sample_field(sq, FunctionSpec::parse("sin(3x) cos(2y) + x^3"), 1.0 / 16.0);
    const Cor2Report r = cor2_check(f, sq, 1, 3.0, default_radii(f.h, sq.diameter()));
    CHECK(r.points == f.inside_count());
    CHECK(std::isfinite(r.max_ratio));
    CHECK(r.p_star < 3.0);
    CHECK_THROWS_AS(cor2_check(f, sq, 1, 2.0, {0.1}), Error);
  }

  TEST_CASE("extension verdicts") {
    const PlanarDomain sq = make_square();
    CHECK(extension_criterion(FunctionSpec::parse("sin(3x) cos(2y)"), sq, 1, 2.0, 1.0 / 16.0).extendable);
    const ExtensionCheck jump =
        extension_criterion([](Point p) { return p.x < 0.5 ? 0.0 : 1.0; }, sq, 1, 2.0, 1.0 / 16.0);
    CHECK_FALSE(jump.extendable);
    CHECK(jump.verdict == "not extendable at grid scale");
  }
}
