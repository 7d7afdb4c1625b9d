#include <doctest.h>

#include <set>

#include "bnm/baselines.hpp"
#include "oracles.hpp"

using namespace bnm;

TEST_CASE("boustrophedon: full budget observes every cell") {
  const GridMap map = generate_clustered_map(100, 100, 4, 250, 1);
  const RunRecord run = boustrophedon_run(map, 10000);
  CHECK(run.cells_covered() == 10000);
  CHECK(run.moves() <= 10000);
}

TEST_CASE("boustrophedon: b = 800 covers about 8%") {
  const RunRecord run = boustrophedon_run(GridMap(100, 100), 800);
  CHECK(run.coverage_fraction() >= 0.07);
  CHECK(run.coverage_fraction() <= 0.09);
}

TEST_CASE("boustrophedon: never revisits when the serpentine fits") {
  for (int b : {0, 99, 500, 800, 2500, 6000, 9999}) {
    const RunRecord run = boustrophedon_run(GridMap(100, 100), b);
    CHECK(run.cells_covered() == run.observations.size());
  }
}

TEST_CASE("random waypoint: determinism and zero budget") {
  const GridMap map = generate_clustered_map(50, 50, 2, 60, 3);
  CHECK(random_waypoint_run(map, 700, 4) == random_waypoint_run(map, 700, 4));
  CHECK_FALSE(random_waypoint_run(map, 700, 4) == random_waypoint_run(map, 700, 5));
  const RunRecord none = random_waypoint_run(map, 0, 4);
  CHECK(none.observations.size() == 1);
}

TEST_CASE("property: random waypoint paths are 4-adjacent, in bounds and spend the budget exactly") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    oracle::Gen gen(seed);
    const GridMap map(gen.range(1, 40), gen.range(2, 40));
    const int b = gen.range(0, 1500);
    const RunRecord run = random_waypoint_run(map, b, seed);
    CHECK(run.moves() == b);
    for (std::size_t t = 0; t < run.observations.size(); ++t) {
      CHECK(map.extent().contains(run.observations[t].cell));
      if (t > 0) CHECK(manhattan(run.observations[t - 1].cell, run.observations[t].cell) == 1);
    }
  }
}

TEST_CASE("random waypoint: travel is horizontal first, then vertical") {
  const GridMap map(30, 30);
  const RunRecord run = random_waypoint_run(map, 500, 8);
  // Direction changes from vertical back to horizontal happen only at waypoints,
  // so no vertical move is immediately followed by a horizontal move unless
  // the next leg begins there; check that each leg has at most one turn.
  int turns_in_leg = 0;
  for (std::size_t t = 2; t < run.observations.size(); ++t) {
    const Cell a = run.observations[t - 2].cell;
    const Cell b = run.observations[t - 1].cell;
    const Cell c = run.observations[t].cell;
    const bool h1 = a.y == b.y;
    const bool h2 = b.y == c.y;
    if (h1 && !h2) ++turns_in_leg;
    if (!h1 && h2) turns_in_leg = 0;
    CHECK(turns_in_leg <= 1);
  }
}

TEST_CASE("random waypoint: mean coverage grows with budget") {
  const GridMap map(100, 100);
  double low = 0.0;
  double high = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    low += random_waypoint_run(map, 800, seed).coverage_fraction();
    high += random_waypoint_run(map, 2500, seed).coverage_fraction();
  }
  CHECK(high > low);
}

TEST_CASE("both baselines respect the budget") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GridMap map = generate_clustered_map(100, 100, 4, 250, seed);
    for (int b : {800, 2500, 6000}) {
      CHECK(boustrophedon_run(map, b).moves() <= b);
      CHECK(random_waypoint_run(map, b, seed).moves() <= b);
    }
  }
}
