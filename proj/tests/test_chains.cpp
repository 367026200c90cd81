#include <doctest.h>

#include "subhyp/catalog.hpp"
#include "subhyp/chains.hpp"
#include "subhyp/errors.hpp"

using namespace subhyp;

TEST_SUITE("chains") {
  TEST_CASE("chain along a square segment") {
    const PlanarDomain sq = make_square();
    const ParamCurve c = ParamCurve::from_points(sq, {{0.05, 0.5}, {0.95, 0.5}});
    const CubeChain ch = build_chain(sq, c);
    const ChainReport r = verify_chain(ch, sq);
    CHECK(r.ok);
    CHECK(r.multiplicity <= kMultiplicityBound);
    CHECK(r.radius_ratio <= 5.0 / 3.0 + 1e-12);
    CHECK(ch.connections.size() + 1 == ch.cubes.size());
    for (const Cube& q : ch.cubes)
      CHECK(q.radius == doctest::Approx(sq.boundary_distance(q.center, Norm::Uniform) / 8.0));
  }

  TEST_CASE("one cube when both endpoints fit") {
    const PlanarDomain d = make_disk();
    const CubeChain ch = build_chain(d, ParamCurve::from_points(d, {{0.0, 0.0}, {0.01, 0.0}}));
    CHECK(ch.cubes.size() == 1);
  }

  TEST_CASE("curve touching the boundary") {
    const PlanarDomain sq = make_square();
    ParamCurve c;
    c.vertices = {{0.5, 0.5}, {0.5, 0.0}};
    c.arclength = {0.0, 0.5};
    c.weight = {0.5, 0.0};
    CHECK_THROWS_AS(build_chain(sq, c), Error);
  }

  TEST_CASE("covering multiplicity") {
    CHECK(covering_multiplicity({}) == 0);
    CHECK(covering_multiplicity({Cube{{0, 0}, 1}, Cube{{3, 0}, 1}}) == 1);
    CHECK(covering_multiplicity({Cube{{0, 0}, 1}, Cube{{2, 0}, 1}}) == 2);  // touching closed cubes
    CHECK(covering_multiplicity({Cube{{0, 0}, 1}, Cube{{0.5, 0.5}, 1}, Cube{{1, 1}, 1}}) == 3);
  }

  TEST_CASE("length inside a cube") {
    const PlanarDomain sq = make_square();
    const ParamCurve c = ParamCurve::from_points(sq, {{0.1, 0.5}, {0.9, 0.5}});
    CHECK(length_inside(c, Cube{{0.5, 0.5}, 0.1}) == doctest::Approx(0.2));
    CHECK(length_inside(c, Cube{{0.5, 0.9}, 0.1}) == 0.0);
  }
}
