// Copyright 2026 The hqnn Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception hierarchy shared by every hqnn module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace hqnn {

enum class ErrorCode {
    Contract,   ///< precondition violated by the caller
    Input,      ///< unreadable or malformed input data / configuration
    Numeric,    ///< non-finite value encountered during computation
    Resource,   ///< qubit ceiling or Fock element budget exceeded
    Truncation, ///< Fock-space leakage above tolerance
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}
    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

class ContractError : public Error {
  public:
    explicit ContractError(const std::string &message)
        : Error(ErrorCode::Contract, message) {}
};

class InputError : public Error {
  public:
    explicit InputError(const std::string &message)
        : Error(ErrorCode::Input, message) {}
};

class NumericError : public Error {
  public:
    explicit NumericError(const std::string &message)
        : Error(ErrorCode::Numeric, message) {}
};

class ResourceError : public Error {
  public:
    explicit ResourceError(const std::string &message)
        : Error(ErrorCode::Resource, message) {}
};

class TruncationError : public Error {
  public:
    explicit TruncationError(const std::string &message)
        : Error(ErrorCode::Truncation, message) {}
};

/// Throws ContractError with `message` unless `condition` holds.
inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw ContractError(message);
    }
}

} // namespace hqnn
