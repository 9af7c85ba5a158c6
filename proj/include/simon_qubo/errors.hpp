// Copyright 2026 The simon-qubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace simon_qubo {

// Invalid parameters or mismatched dimensions. Maps to CLI exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation that cannot complete: size caps, non-chain models,
// unreachable states, degenerate fits. Maps to CLI exit status 3.
class ComputeError : public std::runtime_error {
 public:
  explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

class CapExceededError : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

class StructuralError : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

// File could not be read, written or parsed. Maps to CLI exit status 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace simon_qubo
