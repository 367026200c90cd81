#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "subhyp/catalog.hpp"
#include "subhyp/errors.hpp"
#include "subhyp/metric.hpp"

using namespace subhyp;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("metric") {
  TEST_CASE("inner metric of a convex domain is the chord") {
    const PlanarDomain sq = make_square();
    CHECK(subhyp_distance(sq, 1.0, {0.2, 0.2}, {0.7, 0.2}).value == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(subhyp_distance(sq, 1.0, {0.1, 0.9}, {0.8, 0.3}).value ==
          doctest::Approx(distance({0.1, 0.9}, {0.8, 0.3})).epsilon(1e-3));
  }

  TEST_CASE("vertical segment quadrature") {
    const PlanarDomain sq = make_square();
    for (double alpha : {0.25, 0.5, 0.75}) {
      const double got = segment_weighted_length(sq, {0.5, 0.01}, {0.5, 0.45}, alpha, Norm::Uniform, 1e-10);
      CHECK(got == doctest::Approx(oracle::vertical_segment(0.01, 0.45, alpha)).epsilon(1e-6));
    }
  }

  TEST_CASE("curve length agrees with segment quadrature") {
    const PlanarDomain sq = make_square();
    const ParamCurve c = ParamCurve::from_points(sq, {{0.5, 0.05}, {0.5, 0.25}, {0.5, 0.4}});
    CHECK(weighted_length(c, 0.5, sq) == doctest::Approx(oracle::vertical_segment(0.05, 0.4, 0.5)).epsilon(1e-5));
  }

  TEST_CASE("geodesic around the annulus hole") {
    const PlanarDomain a = make_annulus();
    const double d = subhyp_distance(a, 1.0, {0.75, 0.0}, {-0.75, 0.0}).value;
    CHECK(d > 1.5);
    CHECK(d < M_PI * 0.75);
  }

  TEST_CASE("preconditions") {
    const PlanarDomain sq = make_square();
    CHECK(code_of([&] { subhyp_distance(sq, 0.5, {1.5, 0.5}, {0.5, 0.5}); }) == ErrorCode::PointOutsideDomain);
    CHECK(code_of([&] { near_geodesic(sq, 0.5, {0.2, 0.5}, {0.5, 0.5}, 0.0); }) == ErrorCode::SlackUnreachable);
    const ParamCurve c = ParamCurve::from_points(sq, {{0.5, 0.5}, {0.52, 0.5}});
    CHECK(code_of([&] { check_length_bound(c, sq, 0.5, 1.0); }) == ErrorCode::PreconditionNotMet);
  }

  TEST_CASE("segment case far from the boundary") {
    const SegmentCaseReport r = check_segment_case(make_square(), {0.5, 0.5}, {0.52, 0.5}, 0.5);
    CHECK(r.segment_inside);
    CHECK(r.holds);
    CHECK(r.weighted <= r.bound);
  }

  TEST_CASE("length bound on a hard pair") {
    const PlanarDomain sq = make_square();
    const Point x{0.05, 0.1}, y{0.25, 0.08};
    const ParamCurve c = near_geodesic(sq, 0.5, x, y, 0.01);
    const double C = measured_constant(c, sq, 0.5);
    const LengthBoundReport r = check_length_bound(c, sq, 0.5, C);
    CHECK(r.holds);
    CHECK(r.length <= r.bound);
  }

  TEST_CASE("A1 property along a near-geodesic") {
    const PlanarDomain sq = make_square();
    const ParamCurve c = near_geodesic(sq, 0.5, {0.05, 0.1}, {0.25, 0.08}, 0.01);
    const double C = measured_constant(c, sq, 0.5) * 2.0;
    const A1Report r = check_a1_property(c, sq, 0.5, C);
    CHECK(r.part_i);
    CHECK(r.part_ii);
    CHECK(code_of([&] { check_a1_property(c, sq, 0.5, 1e-3); }) == ErrorCode::HypothesisFails);
  }
}
