// Copyright 2026 The cvbell Authors
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

namespace cvbell {

/// Base class for everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the model or operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative or quadrature routine could not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Two independent evaluation routes disagreed beyond tolerance.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvbell
