// Copyright 2026 The cpk developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#ifndef CPK_ERRORS_HPP
#define CPK_ERRORS_HPP

#include <stdexcept>

namespace cpk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent serialized input.
struct ParseError : Error {
  using Error::Error;
};

// Precondition violation on an operation's arguments.
struct InvalidArgument : Error {
  using Error::Error;
};

// A numeric check failed: rational snapping, normalization, or a
// verification precondition.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace cpk

#endif  // CPK_ERRORS_HPP
