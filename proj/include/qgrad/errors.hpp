// Copyright 2026 The qgrad Authors
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

namespace qgrad {

/// Base class for every error raised by the library. `module()` names the
/// component that detected the problem so the CLI can report provenance.
class Error : public std::runtime_error {
   public:
    Error(std::string module, const std::string &what)
        : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

    const std::string &module() const noexcept { return module_; }

   private:
    std::string module_;
};

/// A precondition on an argument was violated (non-positive precision, bad
/// dimension, malformed grid index, ...).
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// A represented point left the function's domain box.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// A value did not fit the range register.
class RangeOverflowError : public Error {
   public:
    using Error::Error;
};

/// Pipeline output was not of the form |c_d(x)> (x) |0> (x) |chi>.
class ResidualEntanglementError : public Error {
   public:
    using Error::Error;
};

/// A size guard (word width, grid qubits, gate register width) was exceeded.
class GuardError : public Error {
   public:
    using Error::Error;
};

}  // namespace qgrad
