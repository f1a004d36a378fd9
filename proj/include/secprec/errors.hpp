// Copyright 2026 The secprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace secprec {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied a value outside the documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Gram matrix too ill-conditioned to invert.
class SingularChannel : public Error {
 public:
  using Error::Error;
};

// An iterative solver did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Parameters are valid individually but fall outside the region where a
// large-system expression is defined (e.g. beta*E22 >= 1, ZF at beta = 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

void require(bool condition, const std::string& message);

}  // namespace secprec
