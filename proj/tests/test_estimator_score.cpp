#include <doctest.h>

#include <cmath>

#include "bnm/baselines.hpp"
#include "bnm/errors.hpp"
#include "bnm/estimator_score.hpp"
#include "oracles.hpp"

using namespace bnm;

namespace {

WorldModel from_truth(const GridMap& map) {
  WorldModel m{map.extent(), {}};
  for (std::uint8_t v : map.labels()) m.estimates.push_back(v);
  return m;
}

}  // namespace

TEST_CASE("estimate: no observations gives the all-clear prior") {
  const WorldModel m = estimate({}, {20, 10});
  CHECK(std::all_of(m.estimates.begin(), m.estimates.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("estimate: full observation reproduces the truth") {
  const GridMap map = generate_clustered_map(30, 30, 3, 40, 2);
  std::vector<Observation> obs;
  for (std::size_t i = 0; i < map.extent().cell_count(); ++i) obs.push_back(observe(map, map.extent().cell_at(i)));
  CHECK(estimate(obs, map.extent()).estimates == from_truth(map).estimates);
}

TEST_CASE("estimate: one anomaly paints a radius-10 disk") {
  const std::vector<Observation> obs{{{50, 50}, Reading::Anomaly, 0}};
  const WorldModel m = estimate(obs, {100, 100});
  for (int y = 0; y < 100; ++y) {
    for (int x = 0; x < 100; ++x) {
      const double d = std::hypot(x - 50.0, y - 50.0);
      CHECK(m.at({x, y}) == (d <= 10.0 ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("property: kernel, brute-force reference and float oracle agree") {
  oracle::Gen gen(4);
  for (int trial = 0; trial < 60; ++trial) {
    const Extent ext{gen.range(1, 40), gen.range(1, 40)};
    const GridMap map = oracle::random_map(gen, ext.width, ext.height, gen.coin() ? 0.05 : 0.4);
    std::vector<Observation> obs;
    const int n = gen.range(0, 30);
    for (int k = 0; k < n; ++k) obs.push_back(observe(map, {gen.range(0, ext.width - 1), gen.range(0, ext.height - 1)}));
    const WorldModel fast = estimate(obs, ext);
    const WorldModel ref = estimate_reference(obs, ext);
    CHECK(fast.estimates == ref.estimates);
    CHECK(fast.estimates == oracle::float_estimate(obs, ext));
  }
}

TEST_CASE("score: examples") {
  const GridMap truth(2, 2, {1, 0, 0, 0});
  const ScoreParams params;
  CHECK(score_eca(truth, from_truth(truth), params) == 0.0);

  WorldModel miss = from_truth(truth);
  miss.estimates[0] = 0.0;
  CHECK(score_eca(truth, miss, params) == -25.0);

  WorldModel false_alarm = from_truth(truth);
  false_alarm.estimates[1] = 1.0;
  CHECK(score_eca(truth, false_alarm, params) == -0.25);
  CHECK(score_eca(truth, miss, params) / score_eca(truth, false_alarm, params) == 100.0);
}

TEST_CASE("score: dimension mismatch") {
  const GridMap truth(2, 2);
  const WorldModel wrong{{3, 2}, std::vector<double>(6, 0.0)};
  CHECK_THROWS_AS(score_eca(truth, wrong, {}), ConfigError);
}

TEST_CASE("property: score laws") {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Extent ext{gen.range(1, 30), gen.range(1, 30)};
    const GridMap truth = oracle::random_map(gen, ext.width, ext.height, 0.3);
    WorldModel m{ext, {}};
    for (std::size_t i = 0; i < ext.cell_count(); ++i) m.estimates.push_back(gen.coin(0.3) ? 1.0 : 0.0);
    const ScoreParams params;
    const double s = score_eca(truth, m, params);
    CHECK(s <= 0.0);
    CHECK(s == score_eca_reference(truth, m, params));
    CHECK(s == doctest::Approx(oracle::score(truth, m.estimates, 100.0, 1.0)).epsilon(1e-12));
    CHECK((s == 0.0) == (m.estimates == from_truth(truth).estimates));
    const double c = gen.range(1, 9);
    CHECK(score_eca(truth, m, {c * 100.0, c}) == doctest::Approx(c * s).epsilon(1e-12));
    const double mse = score_eca(truth, m, {1.0, 1.0});
    CHECK(mse == doctest::Approx(oracle::score(truth, m.estimates, 1.0, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("property: one more observation never unpins a correct cell") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 60; ++trial) {
    const Extent ext{gen.range(2, 25), gen.range(2, 25)};
    const GridMap map = oracle::random_map(gen, ext.width, ext.height, 0.3);
    const auto path = oracle::random_walk(gen, map, {0, 0}, gen.range(1, 60));
    const std::vector<Observation> shorter(path.begin(), path.end() - 1);
    auto pinned = [&](const std::vector<Observation>& obs) {
      std::vector<bool> p(ext.cell_count(), false);
      for (const Observation& o : obs) p[ext.index(o.cell)] = true;
      return std::count(p.begin(), p.end(), true);
    };
    CHECK(pinned(path) >= pinned(shorter));
  }
}

TEST_CASE("series: sampling, monotone discoveries, full coverage scores 0") {
  const GridMap map = generate_clustered_map(100, 100, 4, 250, 3);
  const RunRecord run = boustrophedon_run(map, 10000);
  const auto series = score_series(run, map, {}, 50);
  CHECK(series.front().t == 0);
  CHECK(series.back().t == run.moves());
  CHECK(series.back().score == 0.0);
  for (std::size_t i = 1; i < series.size(); ++i) {
    CHECK(series[i].t - series[i - 1].t <= 50);
    CHECK(series[i].anomalies_found >= series[i - 1].anomalies_found);
  }
  CHECK(series.back().anomalies_found == static_cast<int>(map.anomaly_count()));
  CHECK_THROWS_AS(score_series(run, map, {}, 0), ConfigError);
}

TEST_CASE("series: t = 0 scores the single-observation model") {
  const GridMap map = generate_clustered_map(30, 30, 2, 40, 8);
  const RunRecord run = boustrophedon_run(map, 0);
  const auto series = score_series(run, map, {}, 50);
  REQUIRE(series.size() == 1);
  const WorldModel m = estimate(run.observations, map.extent());
  CHECK(series[0].score == score_eca(map, m, {}));
}

TEST_CASE("series: parallel and serial routes agree exactly") {
  const GridMap map = generate_clustered_map(60, 60, 3, 100, 6);
  const RunRecord run = random_waypoint_run(map, 3000, 6);
  for (int stride : {1, 7, 50}) {
    const auto a = score_series(run, map, {}, stride);
    const auto b = score_series_reference(run, map, {}, stride);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].t == b[i].t);
      CHECK(a[i].score == b[i].score);
      CHECK(a[i].anomalies_found == b[i].anomalies_found);
      CHECK(a[i].mode == b[i].mode);
    }
  }
}
