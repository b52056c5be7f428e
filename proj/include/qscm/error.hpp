// Copyright 2026 The qscmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qscm {

/// Failure categories. The CLI maps these onto exit codes (input errors
/// exit 2, numeric failures exit 3).
enum class ErrorKind {
  InvalidDimension,
  NotAState,
  Shape,
  Domain,
  Singularity,
  Numeric,
  Resource,
  InsufficientData,
  Bracket,
  Load,
  Precondition,
  Unsupported,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::NotAState: return "not-a-state";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::Bracket: return "bracket";
    case ErrorKind::Load: return "load";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures caused by bad input rather than by the numerics.
  bool is_input_error() const noexcept {
    return kind_ != ErrorKind::Numeric && kind_ != ErrorKind::Resource &&
           kind_ != ErrorKind::Singularity;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qscm
