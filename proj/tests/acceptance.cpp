/*
 * acceptance.cpp
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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
//
// usage: acceptance <path-to-crowdsense-binary> [criterion...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crowdsense/enkf.hpp"
#include "crowdsense/estimation.hpp"
#include "crowdsense/navigation.hpp"
#include "crowdsense/personality.hpp"
#include "crowdsense/prediction.hpp"
#include "crowdsense/proxemics.hpp"
#include "crowdsense/scenarios.hpp"

using namespace crowdsense;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --------------------------------------------------------------- matrices

Outcome matrix_fidelity() {
  Eigen::Matrix<double, 6, 5> rvo;
  rvo << -0.02, 0.32, 0.13, -0.41, 1.02,
          0.03, 0.22, 0.11, -0.28, 1.05,
         -0.04, -0.08, 0.02, 0.58, -0.88,
         -0.06, 0.04, 0.04, -0.16, 1.07,
          0.10, 0.07, -0.08, 0.19, 0.15,
          0.03, -0.15, 0.03, -0.23, 0.23;
  Eigen::Matrix<double, 3, 6> pen;
  pen << 0.22, 0.28, -0.09, -0.01, -0.17, 0.31,
         0.16, 0.33, 0.07, 0.53, 0.05, 0.10,
        -0.15, 0.16, 0.47, -0.01, 0.42, -0.08;
  double worst = 0.0;
  for (int j = 0; j < 5; ++j) {
    const TraitValues b = traits_from_params(denormalize(NormalizedParams::Unit(j))).b;
    worst = std::max(worst, (b - rvo.col(j)).cwiseAbs().maxCoeff());
  }
  for (int j = 0; j < kTraitCount; ++j) {
    const PenVector p = pen_from_traits(TraitValues::Unit(j));
    worst = std::max({worst, std::abs(p.psychoticism - pen(0, j)), std::abs(p.extraversion - pen(1, j)),
                      std::abs(p.neuroticism - pen(2, j))});
  }
  return {worst <= 1e-12, fmt("max column error %.3g (tol 1e-12)", worst)};
}

Outcome proxemics_endpoints() {
  const bool ok = personal_distance(1.0) == 179.58 && personal_distance(0.0) == 88.9 &&
                  social_distance(0.4999) == 233.17 && social_distance(0.5) == 267.97 &&
                  social_distance(0.0) == 233.17 && social_distance(1.0) == 267.97;
  return {ok, fmt("d_p(1)=%.2f d_p(0)=%.2f d_s(<0.5)=%.2f d_s(>=0.5)=%.2f", personal_distance(1.0),
                  personal_distance(0.0), social_distance(0.4999), social_distance(0.5))};
}

// ------------------------------------------------------------------ filter

struct WalkResult {
  double mean_err_rel, var_err_rel, mean_rms;
};

// Scalar random walk against the exact Kalman recursion.
WalkResult random_walk(Eigen::Index members, std::uint64_t seed) {
  const double q = 0.04, r = 0.25;
  std::mt19937_64 truth_rng(1000 + seed);
  std::normal_distribution<double> n01;
  enkf::Rng rng(seed);
  double kf_mean = 10.0, kf_var = 1.0, x = 10.0, sq = 0.0;
  Eigen::MatrixXd ens = Eigen::MatrixXd::Constant(1, members, kf_mean) +
                        enkf::gaussian_samples_diag(Eigen::VectorXd::Constant(1, kf_var), members, rng);
  const int steps = 40;
  for (int t = 0; t < steps; ++t) {
    x += std::sqrt(q) * n01(truth_rng);
    const double z = x + std::sqrt(r) * n01(truth_rng);
    kf_var += q;
    const double gain = kf_var / (kf_var + r);
    kf_mean += gain * (z - kf_mean);
    kf_var *= 1.0 - gain;
    ens += enkf::gaussian_samples_diag(Eigen::VectorXd::Constant(1, q), members, rng);
    const Eigen::MatrixXd observed = ens;
    enkf::analysis(ens, observed, Eigen::VectorXd::Constant(1, z), Eigen::MatrixXd::Constant(1, 1, r), rng);
    const double d = enkf::ensemble_mean(ens)(0) - kf_mean;
    sq += d * d;
  }
  return {std::abs(enkf::ensemble_mean(ens)(0) - kf_mean) / std::abs(kf_mean),
          std::abs(enkf::ensemble_covariance(ens)(0, 0) - kf_var) / kf_var, std::sqrt(sq / steps)};
}

Outcome filter_correctness() {
  const WalkResult big = random_walk(5000, 1);
  std::vector<double> err;
  for (Eigen::Index e : {50, 500, 5000}) {
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) total += random_walk(e, seed).mean_rms;
    err.push_back(total / 5.0);
  }
  const bool ok = big.mean_err_rel <= 0.05 && big.var_err_rel <= 0.05 && err[1] < err[0] && err[2] < err[1];
  return {ok, fmt("E=5000 mean err %.2f%% var err %.2f%%; rms mean error E=50/500/5000: %.4f %.4f %.4f",
                  100 * big.mean_err_rel, 100 * big.var_err_rel, err[0], err[1], err[2])};
}

// -------------------------------------------------------------- estimation

Outcome em_sanity() {
  const MotionModel m{15, 10, 30, 0.4, 1.3};
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    SimulationOptions o;
    o.process_noise_var = 0.01;
    o.steps = 100;
    o.seed = seed;
    const auto sim = simulate_crowd({{1, {0, 0}, {100, 0}, m, 0}}, {}, o);
    NoiseConfig nc;
    nc.sigma_r = Eigen::Matrix2d::Identity() * 1e-4;
    const auto res = em_estimate_sigma_q(sim.observed[0], {}, nc, 5, seed);
    bool monotone = true;
    for (std::size_t i = 1; i < res.log_likelihood.size(); ++i) {
      monotone = monotone && res.log_likelihood[i] >= res.log_likelihood[i - 1];
    }
    const double qx = res.sigma_q[state_index::kPx], qy = res.sigma_q[state_index::kPy];
    const bool within = qx >= 0.005 && qx <= 0.02 && qy >= 0.005 && qy <= 0.02;
    ok = ok && within && monotone;
    detail += fmt("seed %d q=(%.4f, %.4f)%s; ", static_cast<int>(seed), qx, qy, monotone ? "" : " ll decreased");
  }
  return {ok, detail + "target 0.01 within x2, likelihood non-decreasing"};
}

Outcome parameter_recovery() {
  const MotionModel m{15, 10, 30, 0.4, 1.3};
  SimulationOptions o;
  o.steps = 50;
  o.observation_noise_std = 0.05;
  const auto free = simulate_crowd({{1, {0, 0}, {100, 0}, m, 0}}, {}, o);
  bool speed_ok = true;
  std::string speeds;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const double ps = estimate_motion_model(free.observed[0], {}, {}, seed).model.pref_speed;
    speed_ok = speed_ok && std::abs(ps - 1.3) <= 0.13;
    speeds += fmt(" %.3f", ps);
  }

  int ranked = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> offset(-0.3, 0.3);
    double est[2];
    for (int k = 0; k < 2; ++k) {
      const MotionModel a{15, 10, 30, k == 0 ? 0.4 : 1.2, 1.3}, b{15, 10, 30, 0.8, 1.3};
      const double lane = offset(g);
      SimulationOptions so;
      so.steps = 120;
      so.seed = seed;
      so.observation_noise_std = 0.02;
      const auto sim = simulate_crowd({{1, {-8, 0}, {8, 0}, a, 0}, {2, {8, lane}, {-8, lane}, b, 0}}, {}, so);
      const auto fr = frames(sim.observed, 0.1);
      const std::map<PedId, MotionModel> models{{2, b}};
      const Environment env{fr, {}, &models};
      const Track* t = nullptr;
      for (const auto& x : sim.observed) {
        if (x.id == 1) t = &x;
      }
      est[k] = estimate_motion_model(*t, env, {}, seed).model.radius;
    }
    if (est[1] > est[0]) ++ranked;
  }
  return {speed_ok && ranked >= 8,
          fmt("pref_speed estimates%s (1.3 +/- 10%%); radius ranked %d/10 (need 8)", speeds.c_str(), ranked)};
}

// -------------------------------------------------------------- prediction

Outcome prediction_improvement() {
  double socio = 0.0, cv = 0.0;
  std::string detail;
  const int seeds = 3;
  for (int seed = 1; seed <= seeds; ++seed) {
    const MotionModel base;
    const auto agents = crossing_scenario(20, 16.0, static_cast<std::uint64_t>(seed), base, 10.0);
    SimulationOptions o;
    o.steps = 300;
    o.seed = static_cast<std::uint64_t>(seed);
    o.observation_noise_std = 0.05;
    const auto sim = simulate_crowd(agents, {}, o);
    BenchmarkConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.methods = {Method::kSocioSense, Method::kConstantVelocity};
    const auto r = benchmark(sim.observed, {}, cfg);
    const double s = r.find(Method::kSocioSense, 5.0)->accuracy;
    const double c = r.find(Method::kConstantVelocity, 5.0)->accuracy;
    socio += s / seeds;
    cv += c / seeds;
    detail += fmt("seed %d %.3f vs %.3f; ", seed, s, c);
  }
  const double rel = cv > 0.0 ? 100.0 * (socio - cv) / cv : 0.0;
  return {socio > cv, detail + fmt("mean 5 s accuracy %.3f vs constant velocity %.3f (relative %+.1f%%)",
                                   socio, cv, rel)};
}

// -------------------------------------------------------------- navigation

Outcome social_navigation() {
  bool ok = true;
  std::string detail;
  for (double angle : {60.0, 90.0, 150.0}) {
    TimedCrossingOptions opt;
    opt.angle_deg = angle;
    const auto agents = timed_crossing_scenario(20, opt);
    SimulationOptions so;
    so.steps = 700;
    const auto sim = simulate_crowd(agents, {}, so);
    NavScenario sc;
    sc.pedestrians = sim.truth;
    for (const auto& a : agents) sc.models[a.id] = a.model;
    sc.start = opt.robot_start;
    sc.goal = opt.robot_goal;
    sc.start_step = std::llround(opt.lead / sc.dt);
    sc.social = true;
    const auto on = run_navigation(sc);
    sc.social = false;
    const auto off = run_navigation(sc);
    const double overhead = 100.0 * (on.travel_time - off.travel_time) / off.travel_time;
    const bool pass = on.reached_goal && off.reached_goal && on.personal_intrusions == 0 &&
                      off.personal_intrusions >= 5 && overhead < 30.0;
    ok = ok && pass;
    detail += fmt("%.0f deg: on %d / off %d intrusions, overhead %.1f%%; ", angle, on.personal_intrusions,
                  off.personal_intrusions, overhead);
  }
  return {ok, detail + "need 0 / >=5 and < 30%"};
}

// ------------------------------------------------------------------- core

Outcome circle_safety() {
  const auto agents = circle_scenario(10, 10.0, MotionModel{});
  CrowdFrame f;
  std::map<PedId, MotionModel> models;
  std::map<PedId, Vec2> goals;
  for (const auto& a : agents) {
    f.states[a.id] = {a.start, {}, {}};
    models[a.id] = a.model;
    goals[a.id] = a.goal;
  }
  double worst = kInfinity;
  for (int k = 0; k < 400; ++k) {
    f = step_crowd(f, models, goals, {}, 0.1);
    for (auto a = f.states.begin(); a != f.states.end(); ++a) {
      for (auto b = std::next(a); b != f.states.end(); ++b) {
        worst = std::min(worst, distance(a->second.p, b->second.p) - models[a->first].radius -
                                    models[b->first].radius);
      }
    }
  }
  return {worst >= -1e-6, fmt("min surface gap %.4f m over 400 steps (tol -1e-6)", worst)};
}

Outcome round_trips() {
  std::mt19937_64 g(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * u(g); };
  double worst_rt = 0.0;
  bool idempotent = true;
  for (int i = 0; i < 1000; ++i) {
    const MotionModel m{draw(-20, 60), draw(-20, 80), draw(-10, 70), draw(-1, 3), draw(-1, 4)};
    const auto a = m.as_array(), b = denormalize(normalize(m)).as_array();
    for (std::size_t k = 0; k < 5; ++k) worst_rt = std::max(worst_rt, std::abs(a[k] - b[k]));
    TraitValues t;
    for (int k = 0; k < kTraitCount; ++k) t(k) = draw(-2, 2);
    const auto bounds = compute_bounds(t, draw(0, 50));
    const auto once = clamp_params(m, bounds);
    idempotent = idempotent && clamp_params(once, bounds).as_array() == once.as_array();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(rvo_matrix());
  const int rank = static_cast<int>((svd.singularValues().array() > 1e-9).count());
  const double pinv_err =
      (rvo_matrix_pinv() * rvo_matrix() - Eigen::Matrix<double, 5, 5>::Identity()).cwiseAbs().maxCoeff();
  return {worst_rt <= 1e-12 && rank == 5 && pinv_err <= 1e-9 && idempotent,
          fmt("round trip %.3g (tol 1e-12); rank %d; |pinv*A - I| %.3g (tol 1e-9); clamp idempotent %s",
              worst_rt, rank, pinv_err, idempotent ? "yes" : "no")};
}

// ------------------------------------------------------------ determinism

bool same_tree(const fs::path& a, const fs::path& b, std::string& why) {
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.insert(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(b)) names.insert(e.path().filename().string());
  for (const auto& n : names) {
    std::ifstream fa(a / n, std::ios::binary), fb(b / n, std::ios::binary);
    if (!fa || !fb) {
      why = n + " missing";
      return false;
    }
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (sa.str() != sb.str()) {
      why = n + " differs";
      return false;
    }
  }
  return !names.empty();
}

Outcome cli_determinism(const std::string& binary) {
  if (binary.empty()) return {false, "no CLI binary given"};
  const fs::path root = fs::temp_directory_path() / "crowdsense_acceptance";
  fs::remove_all(root);
  auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + binary + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  const std::string r = root.string();
  std::vector<std::pair<std::string, std::function<std::string(const std::string&)>>> steps = {
      {"simulate",
       [&](const std::string& o) {
         return "simulate --scenario timed --agents 8 --steps 300 --noise 0.05 --seed 4 --out " + o;
       }},
      {"estimate",
       [&](const std::string& o) {
         return "estimate --input " + r + "/simulate_a/trajectories.tsv --fps 10 --seed 4 --ensemble 40 "
                "--em-iterations 2 --out " + o;
       }},
      {"traits", [&](const std::string& o) { return "traits --input " + r + "/estimate_a/params.json --out " + o; }},
      {"bench",
       [&](const std::string& o) {
         return "bench --input " + r + "/simulate_a/trajectories.tsv --fps 10 --seed 4 --out " + o;
       }},
      {"navigate",
       [&](const std::string& o) {
         return "navigate --input " + r + "/simulate_a/scenario.json --social both --out " + o;
       }},
  };
  std::string detail;
  bool ok = true;
  for (const auto& [name, args] : steps) {
    const std::string a = r + "/" + name + "_a", b = r + "/" + name + "_b";
    if (!run(args(a)) || !run(args(b))) {
      ok = false;
      detail += name + ": failed to run; ";
      continue;
    }
    std::string why;
    const bool same = same_tree(a, b, why);
    ok = ok && same;
    detail += name + (same ? ": identical; " : ": " + why + "; ");
  }
  fs::remove_all(root);
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  std::set<int> only;
  for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"matrix fidelity", matrix_fidelity},
      {"proxemics endpoints", proxemics_endpoints},
      {"filter correctness", filter_correctness},
      {"EM sanity", em_sanity},
      {"parameter recovery", parameter_recovery},
      {"prediction improvement", prediction_improvement},
      {"social navigation", social_navigation},
      {"core simulation safety", circle_safety},
      {"round trips and idempotence", round_trips},
      {"CLI determinism", [&] { return cli_determinism(binary); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && only.count(id) == 0) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
