#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "subhyp/catalog.hpp"
#include "subhyp/domain_io.hpp"
#include "subhyp/errors.hpp"
#include "subhyp/geometry.hpp"

using namespace subhyp;

TEST_SUITE("geometry") {
  TEST_CASE("square membership is open") {
    const PlanarDomain sq = make_square();
    CHECK(sq.contains({0.5, 0.5}));
    CHECK_FALSE(sq.contains({0.0, 0.5}));
    CHECK_FALSE(sq.contains({1.5, 0.5}));
  }

  TEST_CASE("square boundary distance matches the closed form") {
    const PlanarDomain sq = make_square();
    for (Point p : {Point{0.5, 0.5}, Point{0.1, 0.7}, Point{0.93, 0.2}, Point{0.01, 0.01}}) {
      CHECK(sq.boundary_distance(p, Norm::Uniform) == doctest::Approx(oracle::square_dist(p.x, p.y)));
      CHECK(sq.boundary_distance(p, Norm::Euclidean) == doctest::Approx(oracle::square_dist(p.x, p.y)));
    }
    CHECK_THROWS_AS(sq.boundary_distance({2.0, 2.0}), Error);
  }

  TEST_CASE("disk distance approximates 1 - |p|") {
    const PlanarDomain disk = make_disk();
    for (double r : {0.0, 0.3, 0.9}) {
      const Point p{r * std::cos(0.4), r * std::sin(0.4)};
      CHECK(disk.boundary_distance(p, Norm::Euclidean) == doctest::Approx(1.0 - r).epsilon(1e-3));
      CHECK(disk.boundary_distance(p, Norm::Uniform) <= disk.boundary_distance(p, Norm::Euclidean) + 1e-12);
    }
  }

  TEST_CASE("annulus excludes its hole") {
    const PlanarDomain a = make_annulus();
    CHECK_FALSE(a.contains({0.0, 0.0}));
    CHECK(a.contains({0.75, 0.0}));
    CHECK(a.boundary_distance({0.75, 0.0}, Norm::Euclidean) == doctest::Approx(0.25).epsilon(1e-3));
  }

  TEST_CASE("self-intersecting outline is rejected") {
    try {
      PlanarDomain("bowtie", {{0, 0}, {1, 1}, {1, 0}, {0, 1}});
      FAIL("expected InvalidDomain");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidDomain);
    }
  }

  TEST_CASE("scaling multiplies lengths") {
    const PlanarDomain d = make_annulus();
    const PlanarDomain s = d.scaled(3.0);
    CHECK(s.diameter() == doctest::Approx(3.0 * d.diameter()));
    CHECK(s.boundary_distance({2.1, 0.3}) == doctest::Approx(3.0 * d.boundary_distance({0.7, 0.1})));
  }

  TEST_CASE("cubes") {
    const Cube q{{0, 0}, 1};
    CHECK(q.contains({1, -1}));
    CHECK_FALSE(q.contains({1.01, 0}));
    CHECK(q.intersects(Cube{{2, 2}, 1}));
    CHECK_FALSE(q.intersects(Cube{{2.1, 0}, 1}));
    CHECK(q.dilated(2).side() == 4.0);
  }

  TEST_CASE("catalog is stable and round-trips through JSON") {
    for (const std::string& name : catalog_names()) {
      const PlanarDomain d = catalog_domain(name);
      CHECK(domain_checksum(d) == domain_checksum(catalog_domain(name)));
      const PlanarDomain back = domain_from_json(domain_to_json(d));
      CHECK(domain_checksum(back) == domain_checksum(d));
      if (name != "rooms-and-corridors") CHECK(d.grid_components() == 1);
    }
    CHECK_THROWS_AS(catalog_domain("no-such-domain"), Error);
  }

  TEST_CASE("domain loading") {
    CHECK(load_domain("catalog:square").name() == "square");
    try {
      load_domain("/nonexistent/domain.json");
      FAIL("expected InvalidDomain");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidDomain);
    }
  }

  TEST_CASE("distance field") {
    const DistanceField f = build_distance_field(make_square(), 0.125);
    CHECK(f.inside_count() == 49);
    CHECK(f.value(4, 4) == doctest::Approx(0.5));
    CHECK_THROWS_AS(build_distance_field(make_square(), 0.6), Error);
  }

  TEST_CASE("square is regular with the corner constant") {
    const RegularityEstimate r = regularity_constants(make_square(), 1.0 / 32.0, 0.25);
    CHECK(r.sigma >= 1.0);
    CHECK(r.sigma <= 4.0 + 1e-9);
  }
}
