/*
 * report.hpp
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

#ifndef CROWDSENSE_REPORT_HPP_
#define CROWDSENSE_REPORT_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "crowdsense/estimation.hpp"
#include "crowdsense/navigation.hpp"
#include "crowdsense/prediction.hpp"
#include "crowdsense/proxemics.hpp"

namespace crowdsense::report {

/// Shortest decimal form that round-trips.
std::string format_double(double v);

nlohmann::json to_json(const MotionModel& m);
MotionModel motion_model_from_json(const nlohmann::json& j);

/// {"pedestrians": {id: {params, state, time, sigma_q, collapsed, seed}}, "skipped": [...]}
nlohmann::json estimates_to_json(const std::map<PedId, MotionEstimate>& estimates,
                                 const std::vector<PedId>& skipped = {});
/// Motion models keyed by id; accepts the document written by estimates_to_json.
/// Throws ParseError on malformed input.
std::map<PedId, MotionModel> models_from_json(const nlohmann::json& doc);

/// ped_id, six traits, dominant trait name.
void write_traits_csv(std::ostream& out, const std::map<PedId, MotionModel>& models);
/// ped_id, P, E, N, d_p (cm), d_s (cm).
void write_proxemics_csv(std::ostream& out, const std::map<PedId, MotionModel>& models);

/// Long form: method, window_s, accuracy, n_pedestrians.
void write_benchmark_csv(std::ostream& out, const BenchmarkResult& result);
/// One row per method with one accuracy column per window.
void write_benchmark_table(std::ostream& out, const BenchmarkResult& result,
                           const std::vector<double>& windows);
/// time, then one accuracy column per (method, window); blank where not scored.
void write_benchmark_series(std::ostream& out, const BenchmarkResult& result,
                            const std::vector<Method>& methods, const std::vector<double>& windows);

nlohmann::json to_json(const NavResult& r);
/// time, step, x, y, heading, v, omega, emergency.
void write_path_tsv(std::ostream& out, const NavResult& r);

/// Dumps `doc` with two-space indentation and a trailing newline.
void write_json(std::ostream& out, const nlohmann::json& doc);

}  // namespace crowdsense::report

#endif  // CROWDSENSE_REPORT_HPP_
