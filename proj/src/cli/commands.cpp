#include "bnm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "bnm/errors.hpp"
#include "bnm/estimator_score.hpp"
#include "bnm/learner.hpp"
#include "bnm/map_io.hpp"
#include "bnm/policy_switch.hpp"
#include "bnm/render.hpp"
#include "bnm/run_record.hpp"

namespace bnm::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenmapOptions {
  int width = 100;
  int height = 100;
  int clusters = 4;
  int size = 250;
  std::uint64_t seed = 1;
  std::string out = "map.txt";
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GenmapOptions, width, height, clusters, size, seed, out)

struct TrainOptions {
  std::string map;
  int cycles = 5;
  int steps = 50000;
  std::uint64_t seed = 1;
  double alpha = 0.1;
  double gamma = 0.99;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  int episode_cap = 400;
  int novelty_allowance = 10;
  std::string out = "policy.bnmq";
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(TrainOptions, map, cycles, steps, seed, alpha, gamma,
                                                epsilon_start, epsilon_end, episode_cap,
                                                novelty_allowance, out)

// Map file, or generator parameters when no file is given.
struct MapOptions {
  std::string path;
  int width = 100;
  int height = 100;
  int clusters = 4;
  int size = 250;
  std::uint64_t map_seed = 1;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(MapOptions, path, width, height, clusters, size, map_seed)

struct SwitchOptions {
  int novelty_allowance = 10;
  double reserve = 0.25;
  double w_miss = 100.0;
  double w_false_alarm = 1.0;
  int stride = 50;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SwitchOptions, novelty_allowance, reserve, w_miss,
                                                w_false_alarm, stride)

struct RunOptions {
  std::string alg;
  int budget = 0;
  std::string policy;
  std::uint64_t seed = 1;
  MapOptions map;
  SwitchOptions sw;
  bool render = false;
  std::string out = "run";
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunOptions, alg, budget, policy, seed, map, sw, render, out)

struct BenchOptions {
  std::vector<std::string> algs{"bnm", "boustrophedon", "random"};
  std::vector<int> budgets{800, 2500, 6000};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  MapOptions map;
  std::string policy;
  SwitchOptions sw;
  std::vector<std::string> external;  // label=trace.csv, scored against --map
  std::string out = "bench";
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(BenchOptions, algs, budgets, seeds, map, policy, sw,
                                                external, out)

std::string fmt(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_manifest(const fs::path& path, const std::string& command, const json& args) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  out << json{{"command", command}, {"args", args}}.dump(2) << '\n';
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  body(out);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

GridMap resolve_map(const MapOptions& m, std::uint64_t seed) {
  if (!m.path.empty()) return load_map(m.path);
  return generate_clustered_map(m.width, m.height, m.clusters, m.size, seed);
}

SwitchConfig switch_config(const SwitchOptions& sw) {
  SwitchConfig config;
  config.novelty_allowance = sw.novelty_allowance;
  config.reserve_fraction = sw.reserve;
  return config;
}

ScoreParams score_params(const SwitchOptions& sw) { return {sw.w_miss, sw.w_false_alarm}; }

// ---- genmap ----

int do_genmap(const GenmapOptions& o, std::ostream& out) {
  const GridMap map = generate_clustered_map(o.width, o.height, o.clusters, o.size, o.seed);
  save_map(map, o.out);
  write_manifest(o.out + ".manifest.json", "genmap", o);
  out << "wrote " << o.out << ": " << map.width() << "x" << map.height() << ", "
      << map.anomaly_count() << " anomaly cells\n";
  return kOk;
}

// ---- train ----

int do_train(const TrainOptions& o, std::ostream& out) {
  if (o.cycles < 1 || o.steps < 1) throw UsageError("--cycles and --steps must be at least 1");
  const GridMap map = load_map(o.map);
  Hyperparams hp;
  hp.alpha = o.alpha;
  hp.gamma = o.gamma;
  hp.epsilon_start = o.epsilon_start;
  hp.epsilon_end = o.epsilon_end;
  hp.episode_cap = o.episode_cap;
  hp.novelty_allowance = o.novelty_allowance;
  const TrainResult result = train(map, TrainSchedule{o.cycles, o.steps}, hp, o.seed);

  save_policy(result.policy, o.out);
  write_file(o.out + ".curve.csv", [&](std::ostream& f) {
    f << "cycle,task,anomalies_discovered,cumulative_reward\n";
    for (const EvalReport& r : result.reports) {
      f << r.cycle << ',' << static_cast<int>(r.task) << ',' << r.anomalies_discovered << ','
        << fmt(r.cumulative_reward) << '\n';
    }
  });
  write_manifest(o.out + ".manifest.json", "train", o);

  out << "cycle task anomalies reward\n";
  for (const EvalReport& r : result.reports) {
    out << r.cycle << ' ' << static_cast<int>(r.task) << ' ' << r.anomalies_discovered << ' '
        << fmt(r.cumulative_reward) << '\n';
  }
  out << "wrote " << o.out << '\n';
  return kOk;
}

// ---- run ----

Algorithm parse_alg_or_usage(const std::string& name) {
  try {
    return parse_algorithm(name);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

int do_run(const RunOptions& o, std::ostream& out) {
  const Algorithm alg = parse_alg_or_usage(o.alg);
  if (alg == Algorithm::Bnm && o.policy.empty()) throw UsageError("--alg bnm needs --policy");
  const GridMap map = resolve_map(o.map, o.map.map_seed);
  std::optional<QPolicy> policy;
  if (alg == Algorithm::Bnm) policy = load_policy(o.policy);

  const RunRecord record =
      run_episode(map, o.budget, alg, policy ? &*policy : nullptr, o.seed, switch_config(o.sw));
  const std::vector<ScorePoint> series = score_series(record, map, score_params(o.sw), o.sw.stride);

  save_trace(record, o.out + ".trace.csv");
  write_file(o.out + ".series.csv", [&](std::ostream& f) { write_series(f, series); });
  if (o.render) {
    render_trajectory(map, record, o.out + ".trajectory.ppm");
    render_estimate(estimate(record.observations, map.extent()), o.out + ".estimate.ppm");
  }
  write_manifest(o.out + ".manifest.json", "run", o);

  out << "algorithm " << to_string(alg) << "\nmoves " << record.moves() << "\nanomalies_found "
      << series.back().anomalies_found << "\ncoverage_pct " << fmt(100.0 * record.coverage_fraction())
      << "\nfinal_score " << fmt(series.back().score) << '\n';
  return kOk;
}

// ---- bench ----

struct BenchRow {
  std::string algorithm;
  int budget = 0;
  std::uint64_t seed = 0;
  double final_score = 0.0;
  int anomalies_found = 0;
  double coverage_pct = 0.0;
  std::string status = "ok";

  auto key() const { return std::tie(algorithm, budget, seed); }
};

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void fill_row(BenchRow& row, const RunRecord& record, const GridMap& map, const SwitchOptions& sw,
              const fs::path& series_path) {
  const std::vector<ScorePoint> series = score_series(record, map, score_params(sw), sw.stride);
  write_file(series_path, [&](std::ostream& f) { write_series(f, series); });
  row.final_score = series.back().score;
  row.anomalies_found = series.back().anomalies_found;
  row.coverage_pct = 100.0 * record.coverage_fraction();
}

int do_bench(const BenchOptions& o, std::ostream& out) {
  if (o.algs.empty() || o.budgets.empty() || o.seeds.empty()) {
    throw UsageError("bench needs at least one algorithm, budget and seed");
  }
  std::vector<Algorithm> algs;
  for (const std::string& name : o.algs) algs.push_back(parse_alg_or_usage(name));
  const bool needs_policy = std::find(algs.begin(), algs.end(), Algorithm::Bnm) != algs.end();
  if (needs_policy && o.policy.empty()) throw UsageError("bench with bnm needs --policy");
  if (!o.external.empty() && o.map.path.empty()) throw UsageError("--external traces need --map");
  for (int b : o.budgets) {
    if (b < 0) throw UsageError("budgets must be non-negative");
  }

  std::optional<QPolicy> policy;
  if (needs_policy) policy = load_policy(o.policy);
  std::optional<GridMap> fixed_map;
  if (!o.map.path.empty()) fixed_map = load_map(o.map.path);

  const fs::path dir(o.out);
  fs::create_directories(dir / "series");

  std::vector<std::pair<Algorithm, BenchRow>> jobs;
  for (Algorithm a : algs) {
    for (int b : o.budgets) {
      for (std::uint64_t s : o.seeds) jobs.push_back({a, BenchRow{std::string(to_string(a)), b, s}});
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const auto& x, const auto& y) { return x.second.key() < y.second.key(); });
  jobs.erase(std::unique(jobs.begin(), jobs.end(),
                         [](const auto& x, const auto& y) { return x.second.key() == y.second.key(); }),
             jobs.end());

  const SwitchConfig config = switch_config(o.sw);
  const int n = static_cast<int>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    auto& [alg, row] = jobs[static_cast<std::size_t>(i)];
    try {
      const GridMap map = fixed_map ? *fixed_map : resolve_map(o.map, row.seed);
      const RunRecord record = run_episode(map, row.budget, alg, policy ? &*policy : nullptr, row.seed, config);
      const std::string name = row.algorithm + "_b" + std::to_string(row.budget) + "_s" + std::to_string(row.seed) + ".csv";
      fill_row(row, record, map, o.sw, dir / "series" / name);
    } catch (const std::exception& e) {
      row.status = csv_safe(std::string("error: ") + e.what());
    }
  }

  std::vector<BenchRow> rows;
  for (auto& job : jobs) rows.push_back(std::move(job.second));
  for (const std::string& entry : o.external) {
    const auto eq = entry.find('=');
    BenchRow row;
    row.algorithm = csv_safe(entry.substr(0, eq));
    try {
      if (eq == std::string::npos || eq == 0) throw ConfigError("expected label=trace.csv");
      std::ifstream in(entry.substr(eq + 1), std::ios::binary);
      if (!in) throw std::runtime_error("cannot open " + entry.substr(eq + 1));
      RunRecord record = read_trace(in, fixed_map->extent(), Algorithm::Boustrophedon, 0);
      record.b_total = record.moves();
      row.budget = record.moves();
      fill_row(row, record, *fixed_map, o.sw, dir / "series" / (row.algorithm + "_external.csv"));
    } catch (const std::exception& e) {
      row.status = csv_safe(std::string("error: ") + e.what());
    }
    rows.push_back(std::move(row));
  }

  int failures = 0;
  write_file(dir / "summary.csv", [&](std::ostream& f) {
    f << "algorithm,budget,seed,final_score,anomalies_found,coverage_pct,status\n";
    for (const BenchRow& r : rows) {
      f << r.algorithm << ',' << r.budget << ',' << r.seed << ',' << fmt(r.final_score) << ','
        << r.anomalies_found << ',' << fmt(r.coverage_pct) << ',' << r.status << '\n';
      if (r.status != "ok") ++failures;
    }
  });
  write_manifest(dir / "manifest.json", "bench", o);
  out << "wrote " << (dir / "summary.csv").string() << ": " << rows.size() << " runs, " << failures
      << " failed\n";
  return kOk;
}

// ---- option wiring ----

void add_map_options(CLI::App* cmd, MapOptions& m, bool with_seed) {
  cmd->add_option("--map", m.path, "Map file; generated from the options below when absent");
  cmd->add_option("--width", m.width, "Generated map width")->check(CLI::PositiveNumber);
  cmd->add_option("--height", m.height, "Generated map height")->check(CLI::PositiveNumber);
  cmd->add_option("--clusters", m.clusters, "Generated cluster count")->check(CLI::NonNegativeNumber);
  cmd->add_option("--size", m.size, "Cells per generated cluster")->check(CLI::PositiveNumber);
  if (with_seed) cmd->add_option("--map-seed", m.map_seed, "Generator seed");
}

void add_switch_options(CLI::App* cmd, SwitchOptions& sw) {
  cmd->add_option("--novelty-allowance", sw.novelty_allowance, "Steps without a new anomaly before leaving close inspection")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--reserve", sw.reserve, "Close-inspection budget reserve fraction")
      ->check(CLI::Range(0.0, 0.999999));
  cmd->add_option("--w-miss", sw.w_miss, "Score weight on missed anomalies")->check(CLI::NonNegativeNumber);
  cmd->add_option("--w-false-alarm", sw.w_false_alarm, "Score weight on false alarms")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--stride", sw.stride, "Timesteps between score samples")->check(CLI::PositiveNumber);
}

int dispatch(const std::string& command, const json& args, std::ostream& out) {
  if (command == "genmap") return do_genmap(args.get<GenmapOptions>(), out);
  if (command == "train") return do_train(args.get<TrainOptions>(), out);
  if (command == "run") return do_run(args.get<RunOptions>(), out);
  if (command == "bench") return do_bench(args.get<BenchOptions>(), out);
  throw UsageError("unknown command \"" + command + "\" in manifest");
}

int do_replay(const std::string& manifest_path, const std::string& out_override, std::ostream& out) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest " + manifest_path);
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(manifest_path + ": " + e.what());
  }
  if (!manifest.contains("command") || !manifest.contains("args")) {
    throw UsageError(manifest_path + ": expected \"command\" and \"args\"");
  }
  json args = manifest["args"];
  if (!out_override.empty()) args["out"] = out_override;
  return dispatch(manifest["command"].get<std::string>(), args, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounomodes informative path planning: maps, training, runs and benchmarks", "bnm"};
  app.require_subcommand(1);

  GenmapOptions genmap;
  auto* g = app.add_subcommand("genmap", "Generate a clustered anomaly map");
  g->add_option("--width", genmap.width)->check(CLI::PositiveNumber);
  g->add_option("--height", genmap.height)->check(CLI::PositiveNumber);
  g->add_option("--clusters", genmap.clusters)->check(CLI::NonNegativeNumber);
  g->add_option("--size", genmap.size, "Cells per cluster")->check(CLI::PositiveNumber);
  g->add_option("--seed", genmap.seed);
  g->add_option("--out", genmap.out);

  TrainOptions train_opts;
  auto* t = app.add_subcommand("train", "Train the close-inspection policy");
  t->add_option("--map", train_opts.map)->required();
  t->add_option("--cycles", train_opts.cycles)->check(CLI::PositiveNumber);
  t->add_option("--steps", train_opts.steps, "Learning steps per cycle")->check(CLI::PositiveNumber);
  t->add_option("--seed", train_opts.seed);
  t->add_option("--alpha", train_opts.alpha);
  t->add_option("--gamma", train_opts.gamma);
  t->add_option("--epsilon-start", train_opts.epsilon_start);
  t->add_option("--epsilon-end", train_opts.epsilon_end);
  t->add_option("--episode-cap", train_opts.episode_cap)->check(CLI::PositiveNumber);
  t->add_option("--novelty-allowance", train_opts.novelty_allowance)->check(CLI::PositiveNumber);
  t->add_option("--out", train_opts.out);

  RunOptions run_opts;
  auto* r = app.add_subcommand("run", "Run one episode and score it");
  r->add_option("--alg", run_opts.alg, "bnm, boustrophedon or random")->required();
  r->add_option("--budget", run_opts.budget)->required()->check(CLI::NonNegativeNumber);
  r->add_option("--policy", run_opts.policy);
  r->add_option("--seed", run_opts.seed, "Seed for the random-waypoint baseline");
  add_map_options(r, run_opts.map, true);
  add_switch_options(r, run_opts.sw);
  r->add_flag("--render", run_opts.render, "Also write trajectory and estimate images (PPM)");
  r->add_option("--out", run_opts.out, "Output prefix");

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Algorithms x budgets x seeds sweep");
  b->add_option("--algs", bench.algs)->delimiter(',');
  b->add_option("--budgets", bench.budgets)->delimiter(',');
  b->add_option("--seeds", bench.seeds, "Run seeds; each also seeds its generated map")->delimiter(',');
  b->add_option("--policy", bench.policy);
  add_map_options(b, bench.map, false);
  add_switch_options(b, bench.sw);
  b->add_option("--external", bench.external, "label=trace.csv, scored against --map");
  b->add_option("--out", bench.out, "Output directory");

  std::string manifest_path;
  std::string replay_out;
  auto* rp = app.add_subcommand("replay", "Rerun a command from its manifest");
  rp->add_option("--manifest", manifest_path)->required();
  rp->add_option("--out", replay_out, "Write outputs here instead of the recorded location");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return do_genmap(genmap, out);
    if (*t) return do_train(train_opts, out);
    if (*r) return do_run(run_opts, out);
    if (*b) return do_bench(bench, out);
    if (*rp) return do_replay(manifest_path, replay_out, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace bnm::cli
