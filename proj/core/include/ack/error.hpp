// Copyright 2026 The ACK Authors
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

namespace ack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad shape, out-of-range
/// index, non-unitary gate where a unitary is required, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A resource guard was hit: statevector width, branch enumeration count.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A numerical self-check failed (QPD residual, reassembly mismatch).
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unknown configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

#define ACK_REQUIRE(cond, msg)                                  \
  do {                                                          \
    if (!(cond)) throw ::ack::InvalidArgument(std::string(msg)); \
  } while (0)

}  // namespace ack
