/* Copyright 2026 The idfilt Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

#ifndef IDFILT_ERRORS_HPP
#define IDFILT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace idfilt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input to an arithmetic primitive (division by zero, bad modulus, ...).
struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

// The requested answer depends on data beyond the truncation order.
struct CensoringError : Error {
  using Error::Error;
};

// An internal consistency check failed. Indicates a bug or a false claim.
struct InvariantViolation : Error {
  using Error::Error;
};

}  // namespace idfilt

#endif
