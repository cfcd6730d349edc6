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

#include "binomlab/scan.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "binomlab/detail/format.hpp"
#include "binomlab/errors.hpp"

namespace binomlab {

namespace {

using nlohmann::json;

ReportRow make_row(const ScanGrid& grid, const IdentityInstance& inst,
                   std::uint64_t row_index) {
  ReportRow row;
  row.instance = inst;

  const Rational lhs = lhs_alternating_sum(inst);
  const Rational rhs = rhs_general(inst);
  if (!(lhs == rhs)) {
    throw OracleMismatchError("exact routes disagree at " + inst.to_string() +
                              ": " + lhs.to_string() + " != " + rhs.to_string());
  }
  row.exact_value = rhs;

  const auto applicable = applicable_strategies(inst.m);
  for (EvalStrategy s : grid.strategies) {
    for (EvalStrategy a : applicable) {
      if (s == a) {
        row.float_results.push_back(eval_float(inst, s));
        break;
      }
    }
  }

  if (grid.mc.has_value()) {
    StreamConfig cfg = *grid.mc;
    cfg.seed = derive_stream_seed(grid.mc->seed, row_index);
    row.mc_result = estimate_p_less(inst, cfg, /*threads=*/1);
  }
  return row;
}

void append_csv_line(std::string& out, const ReportRow& row,
                     const FloatEvalResult* fr) {
  const IdentityInstance& inst = row.instance;
  out += std::to_string(inst.n);
  out += ',';
  out += std::to_string(inst.m);
  out += ',';
  out += inst.theta.to_string();
  out += ',';
  out += row.exact_value.to_string();
  out += ',';
  if (fr != nullptr) {
    out += to_string(fr->strategy);
    out += ',';
    out += detail::format_full(fr->value);
    out += ',';
    out += detail::format_sci6(fr->abs_error);
    out += ',';
    out += detail::format_sci6(fr->rel_error);
    out += ',';
    out += detail::format_sci6(fr->cancellation_index);
  } else {
    out += ",,,,";
  }
  if (row.mc_result.has_value()) {
    const McEstimate& mc = *row.mc_result;
    out += ',';
    out += detail::format_full(mc.p_hat);
    out += ',';
    out += detail::format_full(mc.std_error);
    out += ',';
    out += std::to_string(mc.samples);
    out += ',';
    out += std::to_string(mc.seed);
  } else {
    out += ",,,,";
  }
  out += '\n';
}

json row_to_json(const ReportRow& row) {
  json j;
  j["n"] = row.instance.n;
  j["m"] = row.instance.m;
  j["theta"] = row.instance.theta.to_string();
  j["exact"] = row.exact_value.to_string();
  j["exact_decimal"] = row.exact_value.to_double();
  json frs = json::array();
  for (const auto& fr : row.float_results) {
    frs.push_back({{"strategy", std::string(to_string(fr.strategy))},
                   {"value", fr.value},
                   {"abs_error", fr.abs_error},
                   {"rel_error", fr.rel_error},
                   {"cancellation_index", fr.cancellation_index}});
  }
  j["float_results"] = std::move(frs);
  if (row.mc_result.has_value()) {
    const McEstimate& mc = *row.mc_result;
    j["mc"] = {{"p_hat", mc.p_hat},
               {"stderr", mc.std_error},
               {"ci95_low", mc.ci95_low},
               {"ci95_high", mc.ci95_high},
               {"samples", mc.samples},
               {"seed", mc.seed},
               {"chunk_count", mc.chunk_count}};
  } else {
    j["mc"] = nullptr;
  }
  return j;
}

std::vector<std::int64_t> parse_int_array(const json& j, const std::string& key) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("grid key \"" + key + "\" must be a non-empty array of integers");
  }
  std::vector<std::int64_t> values;
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      throw ParseError("grid key \"" + key + "\" must contain only integers");
    }
    values.push_back(v.get<std::int64_t>());
  }
  return values;
}

}  // namespace

void ScanGrid::validate() const {
  if (n_values.empty() || m_values.empty() || theta_values.empty() ||
      strategies.empty()) {
    throw InvalidInstanceError(
        "scan grid lists (n, m, theta, strategies) must all be non-empty");
  }
  for (const Rational& theta : theta_values) {
    if (theta.sign() <= 0) {
      throw InvalidInstanceError("scan requires theta > 0, got theta = " +
                                 theta.to_string() +
                                 " (use `verify` for the exact-only negative-theta domain)");
    }
    for (std::int64_t n : n_values) {
      if (n > kMaxFloatEvalN) {
        throw InvalidInstanceError("scan n = " + std::to_string(n) +
                                   " exceeds the float-evaluation cap " +
                                   std::to_string(kMaxFloatEvalN));
      }
      for (std::int64_t m : m_values) {
        IdentityInstance inst{n, m, theta};
        try {
          inst.validate();
          if (mc.has_value()) inst.validate_for_mc();
        } catch (const PoleError& e) {
          throw PoleError("grid combination " + inst.to_string() + ": " + e.what());
        } catch (const InvalidInstanceError& e) {
          throw InvalidInstanceError("grid combination " + inst.to_string() + ": " +
                                     e.what());
        }
      }
    }
  }
  if (mc.has_value()) mc->validate();
}

std::vector<ReportRow> run_scan(const ScanGrid& grid, int threads) {
  grid.validate();

  std::vector<IdentityInstance> instances;
  instances.reserve(grid.n_values.size() * grid.m_values.size() *
                    grid.theta_values.size());
  for (std::int64_t n : grid.n_values) {
    for (std::int64_t m : grid.m_values) {
      for (const Rational& theta : grid.theta_values) {
        instances.push_back(IdentityInstance{n, m, theta});
      }
    }
  }

  std::vector<ReportRow> rows(instances.size());
  int workers = threads;
  if (workers <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = hw == 0 ? 1 : static_cast<int>(hw);
  }
  workers = static_cast<int>(
      std::min<std::size_t>(instances.size(), static_cast<std::size_t>(workers)));

  if (workers <= 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      rows[i] = make_row(grid, instances[i], i);
    }
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < instances.size();
         i = next.fetch_add(1)) {
      try {
        rows[i] = make_row(grid, instances[i], i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ParseError("unknown report format \"" + std::string(name) +
                   "\" (expected csv or json)");
}

std::string emit(const std::vector<ReportRow>& rows, ReportFormat format) {
  if (rows.empty()) throw std::invalid_argument("emit requires at least one row");

  if (format == ReportFormat::Csv) {
    std::string out =
        "n,m,theta,exact,strategy,value,abs_error,rel_error,cancellation_index,"
        "mc_p_hat,mc_stderr,mc_samples,mc_seed\n";
    for (const ReportRow& row : rows) {
      if (row.float_results.empty()) {
        append_csv_line(out, row, nullptr);
      } else {
        for (const auto& fr : row.float_results) {
          append_csv_line(out, row, &fr);
        }
      }
    }
    return out;
  }

  json doc = json::array();
  for (const ReportRow& row : rows) doc.push_back(row_to_json(row));
  return doc.dump(2) + "\n";
}

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    first += 2;
  }
  auto [p, ec] = std::from_chars(first, last, value, base);
  if (ec != std::errc() || p != last || first == last) {
    throw ParseError("seed \"" + std::string(text) +
                     "\" is not a decimal or 0x-hex 64-bit integer");
  }
  return value;
}

ScanGrid parse_grid_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("grid file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("grid file must be a JSON object");

  ScanGrid grid;
  bool saw_strategies = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "n") {
      grid.n_values = parse_int_array(value, "n");
    } else if (key == "m") {
      grid.m_values = parse_int_array(value, "m");
    } else if (key == "theta") {
      if (!value.is_array() || value.empty()) {
        throw ParseError("grid key \"theta\" must be a non-empty array of \"p/q\" strings");
      }
      for (const auto& t : value) {
        if (!t.is_string()) {
          throw ParseError("grid theta values must be \"p/q\" strings, not numbers");
        }
        grid.theta_values.push_back(Rational::parse(t.get<std::string>()));
      }
    } else if (key == "strategies") {
      saw_strategies = true;
      if (!value.is_array() || value.empty()) {
        throw ParseError("grid key \"strategies\" must be a non-empty array of tags");
      }
      for (const auto& s : value) {
        if (!s.is_string()) throw ParseError("strategy tags must be strings");
        grid.strategies.push_back(parse_strategy(s.get<std::string>()));
      }
    } else if (key == "mc") {
      if (!value.is_object()) throw ParseError("grid key \"mc\" must be an object");
      StreamConfig cfg;
      std::uint64_t samples = 0;
      bool saw_samples = false;
      for (const auto& [mk, mv] : value.items()) {
        if (mk == "samples") {
          if (!mv.is_number_unsigned() && !mv.is_number_integer()) {
            throw ParseError("mc.samples must be a positive integer");
          }
          samples = mv.get<std::uint64_t>();
          saw_samples = true;
        } else if (mk == "seed") {
          if (mv.is_string()) {
            cfg.seed = parse_seed(mv.get<std::string>());
          } else if (mv.is_number_unsigned() || mv.is_number_integer()) {
            cfg.seed = mv.get<std::uint64_t>();
          } else {
            throw ParseError("mc.seed must be an integer or a \"0x...\" string");
          }
        } else if (mk == "chunks") {
          if (!mv.is_number_unsigned() && !mv.is_number_integer()) {
            throw ParseError("mc.chunks must be a positive integer");
          }
          cfg.chunk_count = mv.get<std::uint64_t>();
        } else {
          throw ParseError("unknown mc key \"" + mk + "\"");
        }
      }
      if (!saw_samples || samples == 0) {
        throw ParseError("mc requires a positive \"samples\" count");
      }
      if (cfg.chunk_count == 0) throw ParseError("mc.chunks must be >= 1");
      // Round the per-chunk share up; the actual total is recorded in the
      // estimate itself.
      cfg.samples_per_chunk = (samples + cfg.chunk_count - 1) / cfg.chunk_count;
      grid.mc = cfg;
    } else {
      throw ParseError("unknown grid key \"" + key + "\"");
    }
  }
  if (!saw_strategies) {
    grid.strategies = {EvalStrategy::NaiveSum, EvalStrategy::CompensatedSum,
                       EvalStrategy::PairwiseSum, EvalStrategy::ProductForm,
                       EvalStrategy::SymmetricDP};
  }
  grid.validate();
  return grid;
}

}  // namespace binomlab
