/*
 * cli.hpp
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

#ifndef CROWDSENSE_CLI_HPP_
#define CROWDSENSE_CLI_HPP_

#include <iosfwd>

namespace crowdsense {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitRuntime = 4;

/// Entry point of the `crowdsense` tool. Subcommands: estimate, traits,
/// bench, navigate, simulate. Errors are reported on `err` as a single JSON
/// object {"error": kind, "type": name, "message": text}.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crowdsense

#endif  // CROWDSENSE_CLI_HPP_
