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

#include "binomlab/rng.hpp"

#include <string>

#include "binomlab/errors.hpp"

namespace binomlab {

void StreamConfig::validate() const {
  if (chunk_count < 1) {
    throw InvalidInstanceError("chunk_count must be >= 1");
  }
  if (samples_per_chunk < 1) {
    throw InvalidInstanceError("samples_per_chunk must be >= 1");
  }
}

}  // namespace binomlab
