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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "binomlab/errors.hpp"
#include "binomlab/scan.hpp"

using namespace binomlab;

namespace {

ScanGrid small_grid() {
  ScanGrid grid;
  grid.n_values = {0, 1, 2, 3, 4, 5};
  grid.m_values = {1, 2};
  grid.theta_values = {Rational(1)};
  grid.strategies = {EvalStrategy::NaiveSum, EvalStrategy::ProductForm,
                     EvalStrategy::SymmetricDP};
  return grid;
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("row count and ordering") {
  const auto rows = run_scan(small_grid(), 1);
  REQUIRE(rows.size() == 12);  // 6 * 2 * 1
  // n outermost, then m
  CHECK(rows[0].instance.n == 0);
  CHECK(rows[0].instance.m == 1);
  CHECK(rows[1].instance.m == 2);
  CHECK(rows[2].instance.n == 1);
  CHECK(rows.back().instance.n == 5);
  CHECK(rows.back().instance.m == 2);

  CHECK(rows[0].exact_value == Rational(1));
  // n=2 rows: 1/3 and 11/18
  CHECK(rows[4].exact_value == Rational(1, 3));
  CHECK(rows[5].exact_value == Rational(11, 18));
}

TEST_CASE("strategy filtering per row") {
  const auto rows = run_scan(small_grid(), 1);
  for (const auto& row : rows) {
    if (row.instance.m == 1) {
      // naive + product; symdp folds into product at m = 1
      REQUIRE(row.float_results.size() == 2);
      CHECK(row.float_results[0].strategy == EvalStrategy::NaiveSum);
      CHECK(row.float_results[1].strategy == EvalStrategy::ProductForm);
    } else {
      REQUIRE(row.float_results.size() == 2);
      CHECK(row.float_results[1].strategy == EvalStrategy::SymmetricDP);
    }
  }
}

TEST_CASE("the n=60 cancellation row shows up in a scan") {
  ScanGrid grid;
  grid.n_values = {60};
  grid.m_values = {1};
  grid.theta_values = {Rational(1)};
  grid.strategies = {EvalStrategy::NaiveSum, EvalStrategy::ProductForm};
  const auto rows = run_scan(grid, 1);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].float_results.size() == 2);
  CHECK(rows[0].float_results[0].rel_error >= 1e-2);
  CHECK(rows[0].float_results[1].rel_error <= 1e-13);
}

TEST_CASE("rows re-verify against both closed forms") {
  const auto rows = run_scan(small_grid(), 1);
  for (const auto& row : rows) {
    CHECK(row.exact_value == lhs_alternating_sum(row.instance));
    CHECK(row.exact_value == rhs_general(row.instance));
  }
}

TEST_CASE("csv shape and determinism") {
  const auto rows = run_scan(small_grid(), 1);
  const std::string csv = emit(rows, ReportFormat::Csv);
  CHECK(csv == emit(rows, ReportFormat::Csv));  // byte-identical

  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line ==
        "n,m,theta,exact,strategy,value,abs_error,rel_error,cancellation_index,"
        "mc_p_hat,mc_stderr,mc_samples,mc_seed");
  std::size_t data_lines = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 12);  // 13 fields
    ++data_lines;
  }
  CHECK(data_lines == 24);  // 12 rows x 2 strategies
  CHECK(count_lines(csv) == 25);
}

TEST_CASE("json round-trip reproduces every field") {
  ScanGrid grid = small_grid();
  grid.n_values = {0, 2, 60};
  const auto rows = run_scan(grid, 1);
  const std::string text = emit(rows, ReportFormat::Json);
  CHECK(text == emit(rows, ReportFormat::Json));

  const auto doc = nlohmann::json::parse(text);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& j = doc[i];
    const auto& row = rows[i];
    CHECK(j.at("n").get<std::int64_t>() == row.instance.n);
    CHECK(j.at("m").get<std::int64_t>() == row.instance.m);
    CHECK(j.at("theta").get<std::string>() == row.instance.theta.to_string());
    CHECK(j.at("exact").get<std::string>() == row.exact_value.to_string());
    CHECK(std::bit_cast<std::uint64_t>(j.at("exact_decimal").get<double>()) ==
          std::bit_cast<std::uint64_t>(row.exact_value.to_double()));
    const auto& frs = j.at("float_results");
    REQUIRE(frs.size() == row.float_results.size());
    for (std::size_t f = 0; f < row.float_results.size(); ++f) {
      CHECK(frs[f].at("strategy").get<std::string>() ==
            std::string(to_string(row.float_results[f].strategy)));
      CHECK(std::bit_cast<std::uint64_t>(frs[f].at("value").get<double>()) ==
            std::bit_cast<std::uint64_t>(row.float_results[f].value));
      CHECK(std::bit_cast<std::uint64_t>(frs[f].at("rel_error").get<double>()) ==
            std::bit_cast<std::uint64_t>(row.float_results[f].rel_error));
    }
    CHECK(j.at("mc").is_null());
  }
}

TEST_CASE("rows with no applicable strategy still emit one line") {
  ScanGrid grid;
  grid.n_values = {2};
  grid.m_values = {2};
  grid.theta_values = {Rational(1)};
  grid.strategies = {EvalStrategy::ProductForm};  // product is m=1 only
  const auto rows = run_scan(grid, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].float_results.empty());
  const std::string csv = emit(rows, ReportFormat::Csv);
  std::istringstream in(csv);
  std::string header, line;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, line));
  CHECK(std::count(line.begin(), line.end(), ',') == 12);  // field count intact
  CHECK(line.find("11/18") != std::string::npos);          // exact column present
}

TEST_CASE("mc column: derived per-row seeds, reproducible") {
  ScanGrid grid;
  grid.n_values = {1, 2};
  grid.m_values = {1};
  grid.theta_values = {Rational(1)};
  grid.strategies = {EvalStrategy::ProductForm};
  grid.mc = StreamConfig{42, 8, 2500};  // 2e4 samples per row
  const auto rows = run_scan(grid, 1);
  REQUIRE(rows.size() == 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].mc_result.has_value());
    CHECK(rows[i].mc_result->seed == derive_stream_seed(42, i));
    CHECK(rows[i].mc_result->samples == 20000);
    const double exact = rows[i].exact_value.to_double();
    CHECK(std::abs(rows[i].mc_result->p_hat - exact) <=
          4.0 * rows[i].mc_result->std_error);
  }
  // threads must not change anything, including the MC column
  const auto rows4 = run_scan(grid, 4);
  CHECK(emit(rows, ReportFormat::Csv) == emit(rows4, ReportFormat::Csv));
  CHECK(emit(rows, ReportFormat::Json) == emit(rows4, ReportFormat::Json));

  // the JSON mc object carries all estimate fields, exactly
  const auto doc = nlohmann::json::parse(emit(rows, ReportFormat::Json));
  const auto& mc0 = doc[0].at("mc");
  CHECK(std::bit_cast<std::uint64_t>(mc0.at("p_hat").get<double>()) ==
        std::bit_cast<std::uint64_t>(rows[0].mc_result->p_hat));
  CHECK(std::bit_cast<std::uint64_t>(mc0.at("stderr").get<double>()) ==
        std::bit_cast<std::uint64_t>(rows[0].mc_result->std_error));
  CHECK(mc0.at("ci95_low").get<double>() <= mc0.at("p_hat").get<double>());
  CHECK(mc0.at("samples").get<std::uint64_t>() == 20000);
  CHECK(mc0.at("seed").get<std::uint64_t>() == derive_stream_seed(42, 0));
  CHECK(mc0.at("chunk_count").get<std::uint64_t>() == 8);
}

TEST_CASE("grid validation names the offending combination") {
  ScanGrid grid = small_grid();
  grid.theta_values = {Rational(-1)};
  CHECK_THROWS_AS(grid.validate(), InvalidInstanceError);

  ScanGrid empty = small_grid();
  empty.m_values.clear();
  CHECK_THROWS_AS(empty.validate(), InvalidInstanceError);

  ScanGrid big = small_grid();
  big.n_values = {2000};
  CHECK_THROWS_AS(big.validate(), InvalidInstanceError);

  ScanGrid mc_zero_n = small_grid();
  mc_zero_n.mc = StreamConfig{1, 2, 100};
  CHECK_THROWS_AS(mc_zero_n.validate(), InvalidInstanceError);  // n=0 with MC

  CHECK_THROWS_AS(emit({}, ReportFormat::Csv), std::invalid_argument);
}

TEST_CASE("grid json parsing") {
  const std::string text = R"({
    "n": [1, 2, 3],
    "m": [1, 2],
    "theta": ["1", "1/2"],
    "strategies": ["naive", "symdp"],
    "mc": {"samples": 1000, "seed": "0x2A", "chunks": 4}
  })";
  const ScanGrid grid = parse_grid_json(text);
  CHECK((grid.n_values == std::vector<std::int64_t>{1, 2, 3}));
  CHECK((grid.m_values == std::vector<std::int64_t>{1, 2}));
  REQUIRE(grid.theta_values.size() == 2);
  CHECK(grid.theta_values[1] == Rational(1, 2));
  REQUIRE(grid.strategies.size() == 2);
  REQUIRE(grid.mc.has_value());
  CHECK(grid.mc->seed == 42);
  CHECK(grid.mc->chunk_count == 4);
  CHECK(grid.mc->samples_per_chunk == 250);
}

TEST_CASE("grid json rejections") {
  CHECK_THROWS_AS(parse_grid_json("not json"), ParseError);
  CHECK_THROWS_AS(parse_grid_json(R"([1,2])"), ParseError);
  CHECK_THROWS_AS(parse_grid_json(R"({"n":[1],"m":[1],"theta":[0.5]})"), ParseError);
  CHECK_THROWS_AS(parse_grid_json(R"({"n":[1],"m":[1],"theta":["1/2"],"bogus":1})"),
                  ParseError);
  CHECK_THROWS_AS(parse_grid_json(R"({"n":[],"m":[1],"theta":["1"]})"), ParseError);
  CHECK_THROWS_AS(
      parse_grid_json(R"({"n":[1],"m":[1],"theta":["1"],"mc":{"seed":1}})"),
      ParseError);
  // pole inside the grid
  CHECK_THROWS_AS(parse_grid_json(R"({"n":[3],"m":[1],"theta":["-1"]})"),
                  InvalidInstanceError);
  // defaulted strategies still validate
  const ScanGrid grid = parse_grid_json(R"({"n":[1],"m":[1],"theta":["1"]})");
  CHECK(grid.strategies.size() == 5);
}

TEST_CASE("seed literals") {
  CHECK(parse_seed("42") == 42);
  CHECK(parse_seed("0x2A") == 42);
  CHECK(parse_seed("0X2a") == 42);
  CHECK(parse_seed("18446744073709551615") == 18446744073709551615ull);
  CHECK_THROWS_AS(parse_seed("42x"), ParseError);
  CHECK_THROWS_AS(parse_seed(""), ParseError);
  CHECK_THROWS_AS(parse_seed("0x"), ParseError);
  CHECK_THROWS_AS(parse_seed("-1"), ParseError);
}
