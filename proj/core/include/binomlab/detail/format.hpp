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

#ifndef BINOMLAB_DETAIL_FORMAT_HPP
#define BINOMLAB_DETAIL_FORMAT_HPP

#include <charconv>
#include <string>

namespace binomlab::detail {

// std::to_chars is locale-independent, which is the whole point here:
// report bytes must not depend on the host locale.

/// 17 significant digits: enough to reproduce any double exactly.
inline std::string format_full(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                               std::chars_format::general, 17);
  return std::string(buf, p);
}

/// Scientific notation, 6 significant digits. For error columns.
inline std::string format_sci6(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                               std::chars_format::scientific, 5);
  return std::string(buf, p);
}

}  // namespace binomlab::detail

#endif  // BINOMLAB_DETAIL_FORMAT_HPP
