// Copyright 2026 The gmiqcc Authors
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

namespace gmiqcc {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands built for different qubit counts.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A precondition on an argument does not hold (identity generator, zero
// x-string, bias outside [0, 1], ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed or unsupported input data (bad interchange file, complex
// coefficients, odd y-parity terms where a real Hamiltonian is required).
class DataError : public Error {
 public:
  using Error::Error;
};

// A resource guard was exceeded, e.g. dense matrices beyond the qubit cap.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// The growth search produced no candidate at all. Callers are expected to
// fall back to another element of the partition.
class EmptyCandidateSet : public Error {
 public:
  using Error::Error;
};

// A numerical state that contradicts the algorithm's own invariants.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace gmiqcc
