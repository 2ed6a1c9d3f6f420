/*
 * error.hpp
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

#ifndef CROWDSENSE_ERROR_HPP_
#define CROWDSENSE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace crowdsense {

/// Coarse error category; the CLI maps these onto exit codes.
enum class ErrorKind { kConfig, kIo, kRuntime };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(what), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const { return kind_; }
  /// Short machine-readable error name, e.g. "DuplicateObservation".
  const std::string& name() const { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define CROWDSENSE_DEFINE_ERROR(Name, Kind)                            \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(Kind, #Name, what) {} \
  };

CROWDSENSE_DEFINE_ERROR(ConfigError, ErrorKind::kConfig)
CROWDSENSE_DEFINE_ERROR(IoError, ErrorKind::kIo)
CROWDSENSE_DEFINE_ERROR(ParseError, ErrorKind::kIo)
CROWDSENSE_DEFINE_ERROR(DuplicateObservation, ErrorKind::kIo)
CROWDSENSE_DEFINE_ERROR(EmptyFile, ErrorKind::kIo)
CROWDSENSE_DEFINE_ERROR(ImplausibleSpeed, ErrorKind::kIo)
CROWDSENSE_DEFINE_ERROR(MissingModel, ErrorKind::kRuntime)
CROWDSENSE_DEFINE_ERROR(MissingBounds, ErrorKind::kRuntime)
CROWDSENSE_DEFINE_ERROR(DegenerateEnsemble, ErrorKind::kRuntime)
CROWDSENSE_DEFINE_ERROR(TrackTooShort, ErrorKind::kRuntime)
CROWDSENSE_DEFINE_ERROR(NoPath, ErrorKind::kRuntime)
CROWDSENSE_DEFINE_ERROR(NoEvaluablePedestrians, ErrorKind::kRuntime)
CROWDSENSE_DEFINE_ERROR(DatasetTooShort, ErrorKind::kRuntime)

#undef CROWDSENSE_DEFINE_ERROR

}  // namespace crowdsense

#endif  // CROWDSENSE_ERROR_HPP_
