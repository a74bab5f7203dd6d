// Copyright 2026 The mosaic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mosaic {

// Error taxonomy shared by the library and the CLI exit-code mapping.
enum class ErrorKind {
  Config = 2,        // bad user input: files, flags, parse errors, shapes
  Capacity = 3,      // dense limits exceeded (qubit counts, footprints)
  Convergence = 4,   // learner failed to converge after all restarts
  Inversion = 5,     // channel not invertible (eigenvalue at or below zero)
  Internal = 1,      // consistency violations that indicate a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

inline Error config_error(const std::string& msg) { return Error(ErrorKind::Config, msg); }
inline Error capacity_error(const std::string& msg) { return Error(ErrorKind::Capacity, msg); }
inline Error convergence_error(const std::string& msg) { return Error(ErrorKind::Convergence, msg); }
inline Error inversion_error(const std::string& msg) { return Error(ErrorKind::Inversion, msg); }
inline Error internal_error(const std::string& msg) { return Error(ErrorKind::Internal, msg); }

}  // namespace mosaic
