/*
 * cli.cpp
 * crowdsense
 *
 * SPDX-FileCopyrightText: 2026 The crowdsense Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "crowdsense/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "crowdsense/error.hpp"
#include "crowdsense/report.hpp"
#include "crowdsense/scenarios.hpp"

namespace crowdsense {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
  std::string input;
  std::string out;
  double fps = 10.0;
  double dt = kDefaultDt;
  std::uint64_t seed = 0;
};

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw IoError("cannot write " + (dir / name).string());
  return f;
}

json read_json(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void check_dt(double dt) {
  if (!(dt > 0.0)) throw ConfigError("--dt must be positive");
}

std::vector<Track> load_tracks(const std::string& input, double fps, double dt) {
  check_dt(dt);
  return resample(load_trajectories(input, fps), dt).tracks;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("not a number list: " + text);
    }
  }
  if (out.empty()) throw ConfigError("empty list: " + text);
  return out;
}

std::vector<Method> parse_methods(const std::string& text) {
  std::vector<Method> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_method(item));
  if (out.empty()) throw ConfigError("empty method list");
  return out;
}

Vec2 point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(std::string(what) + " must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

// ---------------------------------------------------------------- estimate

void cmd_estimate(const Common& c, int ensemble, int iterations, std::ostream& out) {
  if (ensemble < 2) throw ConfigError("--ensemble must be at least 2");
  if (iterations < 1) throw ConfigError("--em-iterations must be at least 1");
  const std::vector<Track> tracks = load_tracks(c.input, c.fps, c.dt);
  const std::vector<CrowdFrame> env_frames = frames(tracks, c.dt);
  Environment env{env_frames, {}, nullptr};
  EstimationConfig cfg;
  cfg.ensemble_size = ensemble;
  cfg.em_iterations = iterations;
  const auto estimates = estimate_all(tracks, env, NoiseConfig{}, c.seed, cfg);
  std::vector<PedId> skipped;
  for (const auto& t : tracks) {
    if (estimates.count(t.id) == 0) skipped.push_back(t.id);
  }
  auto f = open_out(c.out, "params.json");
  report::write_json(f, report::estimates_to_json(estimates, skipped));
  out << "estimated " << estimates.size() << " pedestrians, skipped " << skipped.size() << '\n';
}

// ------------------------------------------------------------------ traits

void cmd_traits(const Common& c, std::ostream& out) {
  const auto models = report::models_from_json(read_json(c.input));
  auto traits = open_out(c.out, "traits.csv");
  report::write_traits_csv(traits, models);
  auto prox = open_out(c.out, "proxemics.csv");
  report::write_proxemics_csv(prox, models);
  out << "wrote traits for " << models.size() << " pedestrians\n";
}

// ------------------------------------------------------------------- bench

void cmd_bench(const Common& c, const std::string& windows, const std::string& methods, double y,
               std::ostream& out) {
  BenchmarkConfig cfg;
  cfg.seed = c.seed;
  cfg.windows = parse_list(windows);
  cfg.methods = parse_methods(methods);
  cfg.prediction.dt = c.dt;
  cfg.prediction.y = y;
  double longest = 0.0;
  for (double w : cfg.windows) longest = std::max(longest, w);
  cfg.prediction.horizon = longest;
  const std::vector<Track> tracks = load_tracks(c.input, c.fps, c.dt);
  const BenchmarkResult r = benchmark(tracks, {}, cfg);

  auto csv = open_out(c.out, "bench.csv");
  report::write_benchmark_csv(csv, r);
  auto table = open_out(c.out, "bench_table.csv");
  report::write_benchmark_table(table, r, cfg.windows);
  auto series = open_out(c.out, "bench_series.tsv");
  report::write_benchmark_series(series, r, cfg.methods, cfg.windows);
  report::write_benchmark_table(out, r, cfg.windows);
}

// ---------------------------------------------------------------- navigate

struct NavRequest {
  NavScenario scenario;
  bool run_on = true;
  bool run_off = false;
};

NavRequest load_nav_scenario(const fs::path& path, const std::string& social_flag,
                             const std::uint64_t* seed_override) {
  const json doc = read_json(path);
  const fs::path base = path.parent_path();
  NavRequest req;
  NavScenario& sc = req.scenario;
  try {
    if (!doc.contains("seed") && seed_override == nullptr) {
      throw ConfigError("scenario needs a \"seed\"");
    }
    sc.seed = seed_override != nullptr ? *seed_override : doc.at("seed").get<std::uint64_t>();
    sc.dt = doc.value("dt", kDefaultDt);
    check_dt(sc.dt);
    sc.timeout = doc.value("timeout_s", 120.0);
    const double start_time = doc.value("start_time", 0.0);
    if (!(start_time >= 0.0)) throw ConfigError("start_time must be non-negative");
    sc.start_step = std::llround(start_time / sc.dt);
    const json& robot = doc.at("robot");
    sc.start = point(robot.at("start"), "robot.start");
    sc.goal = point(robot.at("goal"), "robot.goal");
    sc.robot.v_max = robot.value("v_max", sc.robot.v_max);
    sc.robot.omega_max = robot.value("omega_max", sc.robot.omega_max);
    sc.robot.radius = robot.value("radius", sc.robot.radius);
    for (const auto& o : doc.value("obstacles", json::array())) {
      if (!o.is_array() || o.size() != 4) throw ConfigError("obstacle must be [x1, y1, x2, y2]");
      sc.obstacles.push_back({{{o[0].get<double>(), o[1].get<double>()},
                               {o[2].get<double>(), o[3].get<double>()}}});
    }
    const std::string source = doc.value("prediction", std::string("replay"));
    if (source == "replay") {
      sc.source = PredictionSource::kReplay;
    } else if (source == "rollout") {
      sc.source = PredictionSource::kRollout;
    } else {
      throw ConfigError("prediction must be \"replay\" or \"rollout\"");
    }
    std::string social = social_flag.empty() ? doc.value("social_mode", std::string("on")) : social_flag;
    if (social == "on") {
      req.run_on = true;
      req.run_off = false;
    } else if (social == "off") {
      req.run_on = false;
      req.run_off = true;
    } else if (social == "both") {
      req.run_on = req.run_off = true;
    } else {
      throw ConfigError("social mode must be on, off or both");
    }
    if (doc.contains("dataset")) {
      const fs::path data = base / doc.at("dataset").get<std::string>();
      sc.pedestrians = resample(load_trajectories(data, doc.value("fps", 1.0 / sc.dt)), sc.dt).tracks;
    }
    if (doc.contains("models")) {
      sc.models = report::models_from_json(read_json(base / doc.at("models").get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad scenario: ") + e.what());
  }
  if (distance(sc.start, sc.goal) < 1e-9) throw ConfigError("robot start equals goal");

  // Pedestrians without a supplied model are estimated from their full tracks.
  std::vector<Track> missing;
  for (const auto& t : sc.pedestrians) {
    if (sc.models.count(t.id) == 0) missing.push_back(t);
  }
  if (!missing.empty()) {
    const std::vector<CrowdFrame> env_frames = frames(sc.pedestrians, sc.dt);
    Environment env{env_frames, sc.obstacles, nullptr};
    for (const auto& [id, e] : estimate_all(missing, env, NoiseConfig{}, sc.seed)) sc.models[id] = e.model;
  }
  return req;
}

void cmd_navigate(const Common& c, const std::string& social, bool seed_given, std::ostream& out) {
  NavRequest req = load_nav_scenario(c.input, social, seed_given ? &c.seed : nullptr);
  json summary = json::object();
  std::map<std::string, NavResult> results;
  for (bool on : {true, false}) {
    if ((on && !req.run_on) || (!on && !req.run_off)) continue;
    NavScenario sc = req.scenario;
    sc.social = on;
    const std::string tag = on ? "on" : "off";
    const NavResult r = run_navigation(sc);
    auto j = open_out(c.out, "nav_" + tag + ".json");
    report::write_json(j, report::to_json(r));
    auto p = open_out(c.out, "nav_" + tag + "_path.tsv");
    report::write_path_tsv(p, r);
    summary[tag] = report::to_json(r);
    results[tag] = r;
  }
  if (results.size() == 2) {
    const double off = results["off"].travel_time;
    summary["overhead_percent"] = off > 0.0 ? 100.0 * (results["on"].travel_time - off) / off : 0.0;
  }
  auto s = open_out(c.out, "nav_summary.json");
  report::write_json(s, summary);
  report::write_json(out, summary);
}

// ---------------------------------------------------------------- simulate

void cmd_simulate(const Common& c, const std::string& kind, int agents, std::int64_t steps,
                  double noise, double extent, double speed, double angle, std::ostream& out) {
  check_dt(c.dt);
  if (agents < 1) throw ConfigError("--agents must be at least 1");
  if (steps < 1) throw ConfigError("--steps must be at least 1");
  if (noise < 0.0) throw ConfigError("--noise must be non-negative");
  MotionModel base;
  base.pref_speed = speed;
  std::vector<SimAgent> crowd;
  TimedCrossingOptions timed;
  if (kind == "free") {
    // Parallel lanes far enough apart that nobody interacts.
    for (int i = 0; i < agents; ++i) {
      const double lane = 40.0 * i;
      crowd.push_back({i, {0.0, lane}, {1e4, lane}, base, 0});
    }
  } else if (kind == "circle") {
    crowd = circle_scenario(agents, extent / 2.0, base);
  } else if (kind == "crossing") {
    base.radius = 0.4;
    crowd = crossing_scenario(agents, extent, c.seed, base, 10.0, c.dt);
  } else if (kind == "timed") {
    timed.angle_deg = angle;
    crowd = timed_crossing_scenario(agents, timed, c.dt);
  } else {
    throw ConfigError("unknown scenario kind: " + kind);
  }
  SimulationOptions opts;
  opts.dt = c.dt;
  opts.steps = steps;
  opts.seed = c.seed;
  opts.observation_noise_std = noise;
  const SimulationResult sim = simulate_crowd(crowd, {}, opts);

  auto observed = open_out(c.out, "trajectories.tsv");
  write_trajectories(observed, to_raw(sim.observed));
  auto truth = open_out(c.out, "truth.tsv");
  write_trajectories(truth, to_raw(sim.truth));
  json models = json::object();
  for (const auto& a : sim.agents) models[std::to_string(a.id)] = report::to_json(a.model);
  auto m = open_out(c.out, "models.json");
  report::write_json(m, {{"pedestrians", models}});
  if (kind == "timed") {
    const json scenario = {{"seed", c.seed},
                           {"dt", c.dt},
                           {"fps", 1.0 / c.dt},
                           {"start_time", timed.lead},
                           {"robot", {{"start", {timed.robot_start.x, timed.robot_start.y}},
                                      {"goal", {timed.robot_goal.x, timed.robot_goal.y}}}},
                           {"dataset", "truth.tsv"},
                           {"models", "models.json"},
                           {"prediction", "replay"},
                           {"social_mode", "both"}};
    auto sc = open_out(c.out, "scenario.json");
    report::write_json(sc, scenario);
  }
  out << "simulated " << sim.observed.size() << " pedestrians over " << steps << " steps\n";
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::kConfig: return kExitConfig;
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kRuntime: return kExitRuntime;
  }
  return kExitRuntime;
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kRuntime: return "runtime";
  }
  return "runtime";
}

void report_error(std::ostream& err, const char* kind, const std::string& type,
                  const std::string& message) {
  err << json{{"error", kind}, {"type", type}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crowd behavior estimation, prediction and social navigation"};
  app.require_subcommand(1);

  Common c;
  const auto add_common = [&](CLI::App* sub, bool needs_fps) {
    sub->add_option("--input", c.input, "input file")->required();
    sub->add_option("--out", c.out, "output directory")->required();
    if (needs_fps) sub->add_option("--fps", c.fps, "frame rate of the input file")->required();
    sub->add_option("--dt", c.dt, "resampling step (s)")->capture_default_str();
  };

  int ensemble = 100, iterations = 5;
  auto* estimate = app.add_subcommand("estimate", "estimate motion models from a trajectory file");
  add_common(estimate, true);
  estimate->add_option("--seed", c.seed, "filter seed")->capture_default_str();
  estimate->add_option("--ensemble", ensemble, "ensemble size")->capture_default_str();
  estimate->add_option("--em-iterations", iterations, "EM iterations")->capture_default_str();

  auto* traits = app.add_subcommand("traits", "traits and proxemic distances from a parameter file");
  traits->add_option("--input", c.input, "params.json from estimate")->required();
  traits->add_option("--out", c.out, "output directory")->required();

  std::string windows = "1,5", methods = "sociosense,rollout,constant_velocity,kalman";
  double y = 5.0;
  auto* bench = app.add_subcommand("bench", "prediction accuracy benchmark");
  add_common(bench, true);
  bench->add_option("--seed", c.seed, "estimation seed")->required();
  bench->add_option("--windows", windows, "comma-separated windows (s)")->capture_default_str();
  bench->add_option("--methods", methods, "comma-separated methods")->capture_default_str();
  bench->add_option("--y", y, "bound width (percent)")->capture_default_str();

  std::string social;
  auto* navigate = app.add_subcommand("navigate", "run the social navigation planner on a scenario file");
  navigate->add_option("--input", c.input, "scenario JSON")->required();
  navigate->add_option("--out", c.out, "output directory")->required();
  auto* nav_seed = navigate->add_option("--seed", c.seed, "overrides the scenario seed");
  navigate->add_option("--social", social, "on, off or both")
      ->check(CLI::IsMember({"on", "off", "both"}));

  std::string kind = "crossing";
  int agents = 20;
  std::int64_t steps = 300;
  double noise = 0.0, extent = 16.0, speed = 1.3, angle = 90.0;
  auto* simulate = app.add_subcommand("simulate", "generate synthetic trajectories");
  simulate->add_option("--out", c.out, "output directory")->required();
  simulate->add_option("--scenario", kind, "free, circle, crossing or timed")
      ->capture_default_str();
  simulate->add_option("--agents", agents, "number of agents")->capture_default_str();
  simulate->add_option("--steps", steps, "simulation steps")->capture_default_str();
  simulate->add_option("--noise", noise, "observation noise std (m)")->capture_default_str();
  simulate->add_option("--extent", extent, "scene size (m)")->capture_default_str();
  simulate->add_option("--speed", speed, "preferred speed (m/s)")->capture_default_str();
  simulate->add_option("--angle", angle, "timed crossing angle to the robot heading (deg)")
      ->capture_default_str();
  simulate->add_option("--dt", c.dt, "time step (s)")->capture_default_str();
  simulate->add_option("--seed", c.seed, "generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "config", e.get_name(), e.what());
    return kExitConfig;
  }

  try {
    if (estimate->parsed()) cmd_estimate(c, ensemble, iterations, out);
    if (traits->parsed()) cmd_traits(c, out);
    if (bench->parsed()) cmd_bench(c, windows, methods, y, out);
    if (navigate->parsed()) cmd_navigate(c, social, nav_seed->count() > 0, out);
    if (simulate->parsed()) cmd_simulate(c, kind, agents, steps, noise, extent, speed, angle, out);
  } catch (const Error& e) {
    report_error(err, kind_name(e.kind()), e.name(), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "runtime", "Error", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace crowdsense
