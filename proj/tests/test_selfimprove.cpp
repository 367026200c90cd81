#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "subhyp/cantor.hpp"
#include "subhyp/catalog.hpp"
#include "subhyp/errors.hpp"
#include "subhyp/selfimprove.hpp"

using namespace subhyp;

TEST_SUITE("selfimprove") {
  TEST_CASE("exponent record for alpha 1/2, C 1") {
    const ExponentRecord e = compute_exponents(0.5, 1.0, 0.1, 1.0);
    CHECK(e.C_g == 4.0);
    CHECK(e.m == oracle::kM);
    CHECK(e.k == oracle::kK);
    CHECK(e.q_sharp == doctest::Approx(oracle::kQSharp).epsilon(1e-12));
    CHECK(e.q_star == doctest::Approx(oracle::kQStar).epsilon(1e-9));
    CHECK(e.q_cap == doctest::Approx(1.5));
    CHECK(e.q_tilde == doctest::Approx(oracle::kQStar).epsilon(1e-9));
    CHECK(e.alpha_star == doctest::Approx(oracle::kAlphaStar).epsilon(1e-9));
    CHECK(e.p_star == doctest::Approx(oracle::kPStar).epsilon(1e-6));
    CHECK(e.p == doctest::Approx(3.0));
  }

  TEST_CASE("tau") {
    CHECK(tau_from_q(0.5, 1.0) == doctest::Approx(0.5));
    CHECK(tau_from_q(0.5, 1.5) == doctest::Approx(0.25));
  }

  TEST_CASE("weight trace") {
    CHECK_THROWS_AS(WeightTrace({0.0}, {1.0}), Error);
    CHECK_THROWS_AS(WeightTrace({0.0, 1.0}, {1.0, 0.0}), Error);
    CHECK_THROWS_AS(WeightTrace({0.0, 0.0}, {1.0, 1.0}), Error);
    const WeightTrace w({0.0, 0.5, 1.0}, {1.0, 1.5, 2.0});
    CHECK(w(0.25) == doctest::Approx(1.25));
    CHECK(w.max(0.0, 1.0) == doctest::Approx(2.0));
    CHECK(w.argmax(0.0, 0.6) == doctest::Approx(0.6));
    CHECK(w.min(0.2, 1.0) == doctest::Approx(1.2));
    CHECK(w.linear_on(0.0, 0.5));
    CHECK_FALSE(w.linear_on(0.0, 0.6));
    for (double beta : {-0.5, 0.0, 1.0, 2.5, -1.0}) {
      const double exact = beta == -1.0 ? std::log(2.0)
                                        : (std::pow(2.0, beta + 1.0) - 1.0) / (beta + 1.0);
      CHECK(w.power_integral(0.0, 1.0, beta) == doctest::Approx(exact).epsilon(1e-12));
    }
  }

  TEST_CASE("middle-third selection") {
    const CantorSet c(1.0, 3, 6, [](double, double, int) { return 1; });
    CHECK(c.measure_U(0.0, 1.0) == doctest::Approx(1.0 - oracle::cantor_measure(3, 6, 1.0)).epsilon(1e-14));
    CHECK(c.in_U(0.5));
    CHECK_FALSE(c.in_U(0.0));
    CHECK(c.survivor_fraction(6) == 1.0);
  }

  TEST_CASE("decomposition on the square") {
    const PlanarDomain sq = make_square();
    const Point x{0.3, 0.1}, y{0.5, 0.12};
    const CantorDecomposition dec = cantor_decompose(sq, 0.5, 0.0, x, y, 0.1 * distance(x, y));
    const DecompositionReport r = verify_decomposition(dec);
    const double L = dec.curve.length();
    CHECK(r.measure_E == doctest::Approx(oracle::cantor_measure(dec.exponents.m, static_cast<int>(dec.exponents.k), L))
                             .epsilon(1e-12));
    CHECK(r.measure_exact);
    CHECK(r.oscillation_holds);
    CHECK(r.porosity_violations == 0);
    CHECK(r.lgw_holds);
    CHECK(r.tau_checks.size() == 9);
    CHECK(std::isfinite(r.tau_constant));
  }

  TEST_CASE("outside the hard stratum") {
    const PlanarDomain sq = make_square();
    CHECK_THROWS_AS(cantor_decompose(sq, 0.5, 0.0, {0.5, 0.5}, {0.52, 0.5}, 0.002), Error);
  }

  TEST_CASE("reverse Holder constant of a constant weight is one") {
    const ReverseHolderProfile p =
        reverse_holder_exponent([](double a, double b) { return 3.0 * (b - a); }, 2.0, 3, 6);
    for (double c : p.C_tilde) CHECK(c == 1.0);
    CHECK(p.C_g == doctest::Approx(1.0));
  }

  TEST_CASE("reverse Holder constant of t^{-1/2} grows with q") {
    const ReverseHolderProfile p = reverse_holder_exponent(
        [](double a, double b) { return 2.0 * (std::sqrt(b) - std::sqrt(a)); }, 1.0, 2, 10, {1.0, 1.5, 1.8, 1.95});
    for (std::size_t i = 1; i < p.C_tilde.size(); ++i) CHECK(p.C_tilde[i] > p.C_tilde[i - 1]);
    CHECK(p.C_tilde[0] >= 1.0);
  }

  TEST_CASE("tau improvement rejects a constant that is too small") {
    const PlanarDomain sq = make_square();
    const ParamCurve c = near_geodesic(sq, 0.5, {0.05, 0.1}, {0.25, 0.08}, 0.01);
    CHECK_THROWS_AS(self_improve_tau(sq, 0.5, {c}, 0.1), Error);
    const TauResult r = self_improve_tau(sq, 0.5, {c}, 10.0);
    CHECK(r.tau < 0.5);
    CHECK(r.curves.front().holds);
  }
}
