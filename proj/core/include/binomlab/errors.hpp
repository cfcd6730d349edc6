// Copyright 2026 The binomlab Authors
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

#ifndef BINOMLAB_ERRORS_HPP
#define BINOMLAB_ERRORS_HPP

#include <stdexcept>

namespace binomlab {

/// theta hit a pole: theta + k = 0 for some 0 <= k <= n, so neither side of
/// the identity is defined.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameters outside the domain of an operation (n < 0, m < 1, theta <= 0
/// where a positive rate is required, n above the float-evaluation cap, ...).
class InvalidInstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual input: rational literals, strategy tags, grid files.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The two exact closed forms disagreed. This is unreachable unless the
/// arithmetic itself is broken; report rows refuse to exist in that state.
class OracleMismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Too few Monte Carlo samples survived a rejection step for the conditional
/// estimate to mean anything.
class DegenerateConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace binomlab

#endif  // BINOMLAB_ERRORS_HPP
