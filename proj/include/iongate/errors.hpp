// Copyright 2026 The ion-gate-sim Authors
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

namespace iongate {

/// Requested physics that the model deliberately does not cover.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FitSingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CalibrationFailedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for configuration problems. Both kinds map to a validation exit code.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigParseError : public ConfigError {
 public:
  ConfigParseError(int line, const std::string& what)
      : ConfigError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ConfigValidationError : public ConfigError {
 public:
  ConfigValidationError(std::string key, const std::string& what)
      : ConfigError(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace iongate
