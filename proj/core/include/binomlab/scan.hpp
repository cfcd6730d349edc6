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

#ifndef BINOMLAB_SCAN_HPP
#define BINOMLAB_SCAN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binomlab/float_eval.hpp"
#include "binomlab/identity.hpp"
#include "binomlab/mc.hpp"
#include "binomlab/rng.hpp"

namespace binomlab {

/// A parameter sweep: the cross product of the three value lists, evaluated
/// under the listed strategies, with an optional Monte Carlo column.
///
/// theta values are rationals, never raw floats, so the exact column stays
/// exact. When mc is set, every row runs an estimate_p_less whose stream
/// seed is derived from (mc->seed, row_index): rows stay independent and
/// reproducible no matter how the sweep is scheduled.
struct ScanGrid {
  std::vector<std::int64_t> n_values;
  std::vector<std::int64_t> m_values;
  std::vector<Rational> theta_values;
  std::vector<EvalStrategy> strategies;
  std::optional<StreamConfig> mc;

  /// Rejects empty lists and any (n, m, theta) combination the sweep could
  /// not evaluate: poles, theta <= 0 (the float error analysis needs a
  /// positive oracle), n beyond the float cap, and n = 0 when mc is set.
  /// Errors name the offending value.
  void validate() const;
};

/// One sweep cell. exact_value is checked against both closed forms at
/// construction; a mismatch aborts the run with OracleMismatchError, since
/// it would mean the oracle itself is broken.
struct ReportRow {
  IdentityInstance instance;
  Rational exact_value;
  std::vector<FloatEvalResult> float_results;
  std::optional<McEstimate> mc_result;
};

/// Runs the sweep. Rows come out in lexicographic order: n outermost, then
/// m, then theta in the given list order. Rows may be computed in parallel
/// (threads = 0 means hardware concurrency); the output is identical either
/// way. Within a row, strategies keep the grid's order, filtered to the ones
/// applicable for that row's m (ProductForm rows only exist for m = 1).
std::vector<ReportRow> run_scan(const ScanGrid& grid, int threads = 0);

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(std::string_view name);  // "csv" | "json"

/// Serializes rows; output is byte-identical for identical inputs.
///
/// CSV: a header then one line per (row x strategy) with columns
///   n,m,theta,exact,strategy,value,abs_error,rel_error,cancellation_index,
///   mc_p_hat,mc_stderr,mc_samples,mc_seed
/// MC fields repeat on each line of their row and are empty when absent.
/// A row whose strategy list filtered to nothing still emits one line with
/// empty strategy fields, so every row is visible and the field count is
/// constant.
///
/// JSON: an array of row objects with nested float_results and mc; exact
/// values appear both as "p/q" strings and as 17-digit decimals.
std::string emit(const std::vector<ReportRow>& rows, ReportFormat format);

/// Grid-file reader. Expected shape:
///   {"n": [0,1,2], "m": [1,2], "theta": ["1/2","1"],
///    "strategies": ["naive","product"],
///    "mc": {"samples": 1000000, "seed": 42, "chunks": 64}}
/// strategies defaults to all five; mc is optional; mc.seed accepts a
/// decimal number or a "0x..." string. Unknown keys are errors.
ScanGrid parse_grid_json(const std::string& text);

/// Seed literal: decimal or 0x-hex.
std::uint64_t parse_seed(std::string_view text);

}  // namespace binomlab

#endif  // BINOMLAB_SCAN_HPP
