/*
 * report.cpp
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

#include "crowdsense/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <set>

#include "crowdsense/error.hpp"

namespace crowdsense::report {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

json vec(const Vec2& v) { return json::array({v.x, v.y}); }

// Empty when nothing was scored for the row.
std::string accuracy_cell(const BenchmarkRow& r) {
  return r.n_pedestrians > 0 ? format_double(r.accuracy) : std::string();
}

}  // namespace

json to_json(const MotionModel& m) {
  return {{"neighbor_dist", m.neighbor_dist},
          {"max_neighbors", m.max_neighbors},
          {"planning_horizon", m.planning_horizon},
          {"radius", m.radius},
          {"pref_speed", m.pref_speed}};
}

MotionModel motion_model_from_json(const json& j) {
  try {
    return {j.at("neighbor_dist").get<double>(), j.at("max_neighbors").get<double>(),
            j.at("planning_horizon").get<double>(), j.at("radius").get<double>(),
            j.at("pref_speed").get<double>()};
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad motion model: ") + e.what());
  }
}

json estimates_to_json(const std::map<PedId, MotionEstimate>& estimates,
                       const std::vector<PedId>& skipped) {
  json peds = json::object();
  for (const auto& [id, e] : estimates) {
    json entry = to_json(e.model);
    entry["state"] = {{"p", vec(e.state.p)}, {"v", vec(e.state.v)}, {"v_pref", vec(e.state.v_pref)}};
    entry["time"] = e.time;
    entry["sigma_q"] = e.sigma_q;
    entry["collapsed"] = e.collapsed;
    entry["seed"] = e.seed;
    peds[std::to_string(id)] = std::move(entry);
  }
  return {{"pedestrians", std::move(peds)}, {"skipped", skipped}};
}

std::map<PedId, MotionModel> models_from_json(const json& doc) {
  std::map<PedId, MotionModel> out;
  if (!doc.is_object() || !doc.contains("pedestrians") || !doc["pedestrians"].is_object()) {
    throw ParseError("parameter file needs a \"pedestrians\" object");
  }
  for (const auto& [key, value] : doc["pedestrians"].items()) {
    PedId id = 0;
    const auto r = std::from_chars(key.data(), key.data() + key.size(), id);
    if (r.ec != std::errc() || r.ptr != key.data() + key.size()) {
      throw ParseError("pedestrian key is not an integer id: " + key);
    }
    out[id] = motion_model_from_json(value);
  }
  return out;
}

void write_traits_csv(std::ostream& out, const std::map<PedId, MotionModel>& models) {
  out << "ped_id";
  for (auto name : kTraitNames) out << ',' << name;
  out << ",dominant\n";
  for (const auto& [id, m] : models) {
    const TraitValues b = traits_from_params(m).b;
    out << id;
    for (int i = 0; i < kTraitCount; ++i) out << ',' << format_double(b(i));
    out << ',' << kTraitNames[static_cast<std::size_t>(dominant_trait(b))] << '\n';
  }
}

void write_proxemics_csv(std::ostream& out, const std::map<PedId, MotionModel>& models) {
  out << "ped_id,psychoticism,extraversion,neuroticism,personal_cm,social_cm\n";
  for (const auto& [id, m] : models) {
    const PenVector pen = pen_from_traits(traits_from_params(m).b);
    const ProxemicProfile prof = proxemic_profile(pen);
    out << id << ',' << format_double(pen.psychoticism) << ',' << format_double(pen.extraversion)
        << ',' << format_double(pen.neuroticism) << ',' << format_double(prof.personal) << ','
        << format_double(prof.social) << '\n';
  }
}

void write_benchmark_csv(std::ostream& out, const BenchmarkResult& result) {
  out << "method,window_s,accuracy,n_pedestrians\n";
  for (const auto& r : result.rows) {
    out << method_name(r.method) << ',' << format_double(r.window) << ','
        << accuracy_cell(r) << ',' << r.n_pedestrians << '\n';
  }
}

void write_benchmark_table(std::ostream& out, const BenchmarkResult& result,
                           const std::vector<double>& windows) {
  out << "method";
  for (double w : windows) out << ",accuracy_" << format_double(w) << 's';
  out << '\n';
  std::vector<Method> order;
  for (const auto& r : result.rows) {
    if (std::find(order.begin(), order.end(), r.method) == order.end()) order.push_back(r.method);
  }
  for (Method m : order) {
    out << method_name(m);
    for (double w : windows) {
      const BenchmarkRow* r = result.find(m, w);
      out << ',' << (r != nullptr ? accuracy_cell(*r) : std::string());
    }
    out << '\n';
  }
}

void write_benchmark_series(std::ostream& out, const BenchmarkResult& result,
                            const std::vector<Method>& methods, const std::vector<double>& windows) {
  out << "time_s";
  for (Method m : methods) {
    for (double w : windows) out << '\t' << method_name(m) << '_' << format_double(w) << 's';
  }
  out << '\n';
  std::set<double> times;
  for (const auto& s : result.series) times.insert(s.time);
  for (double t : times) {
    out << format_double(std::round(t * 1e6) / 1e6);
    for (Method m : methods) {
      for (double w : windows) {
        out << '\t';
        for (const auto& s : result.series) {
          if (s.time == t && s.method == m && std::abs(s.window - w) < 1e-9) {
            out << format_double(s.accuracy);
            break;
          }
        }
      }
    }
    out << '\n';
  }
}

json to_json(const NavResult& r) {
  return {{"reached_goal", r.reached_goal},
          {"travel_time", r.travel_time},
          {"personal_intrusions", r.personal_intrusions},
          {"social_intrusions", r.social_intrusions},
          {"min_clearance", r.min_clearance},
          {"emergency_steps", r.emergency_steps},
          {"path_samples", r.path.size()}};
}

void write_path_tsv(std::ostream& out, const NavResult& r) {
  out << "time\tstep\tx\ty\theading\tv\tomega\temergency\n";
  for (const auto& s : r.path) {
    out << format_double(s.time) << '\t' << s.step << '\t' << format_double(s.state.p.x) << '\t'
        << format_double(s.state.p.y) << '\t' << format_double(s.state.heading) << '\t'
        << format_double(s.state.v) << '\t' << format_double(s.state.omega) << '\t'
        << (s.emergency ? 1 : 0) << '\n';
  }
}

void write_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

}  // namespace crowdsense::report
