// Times the OpenMP kernels on one thread and on all threads, next to the
// serial references, on a b = 6000 boustrophedon run over a 100x100 map.
// The estimate reference is the brute-force rule, so its column also
// includes the algorithmic gap, not only threading.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "bnm/baselines.hpp"
#include "bnm/estimator_score.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int reps, int threads) {
  const int previous = omp_get_max_threads();
  omp_set_num_threads(threads);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto stop = std::chrono::steady_clock::now();
  omp_set_num_threads(previous);
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

}  // namespace

int main() {
  using namespace bnm;
  const GridMap map = generate_clustered_map(100, 100, 4, 250, 1);
  const RunRecord run = boustrophedon_run(map, 6000);
  const ScoreParams params;

  const int n = omp_get_max_threads();
  std::printf("threads %d\n", n);
  std::printf("%-26s %12s %12s %12s %9s\n", "kernel", "reference_ms", "1thread_ms", "nthread_ms", "speedup");
  auto row = [](const char* name, double ref, double one, double many) {
    std::printf("%-26s %12.4f %12.4f %12.4f %9.2f\n", name, ref, one, many, one / many);
  };

  double checksum = 0.0;
  auto est_ref = [&] { checksum += estimate_reference(run.observations, map.extent()).estimates[0]; };
  auto est = [&] { checksum += estimate(run.observations, map.extent()).estimates[0]; };
  row("estimate", time_ms(est_ref, 3, 1), time_ms(est, 10, 1), time_ms(est, 10, n));

  auto ser_ref = [&] { checksum += score_series_reference(run, map, params, 50).back().score; };
  auto ser = [&] { checksum += score_series(run, map, params, 50).back().score; };
  row("score_series (stride 50)", time_ms(ser_ref, 1, 1), time_ms(ser, 1, 1), time_ms(ser, 1, n));

  const WorldModel model = estimate(run.observations, map.extent());
  auto sc_ref = [&] { checksum += score_eca_reference(map, model, params); };
  auto sc = [&] { checksum += score_eca(map, model, params); };
  row("score_eca", time_ms(sc_ref, 200, 1), time_ms(sc, 200, 1), time_ms(sc, 200, n));

  std::printf("checksum %g\n", checksum);
  return 0;
}
