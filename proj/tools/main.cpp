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

// binomlab: exact, floating-point, and Monte Carlo evaluation of the
// alternating binomial identity family
//
//   sum_{k=0}^n C(n,k) (-1)^k (theta/(theta+k))^m
//     = prod_{k=1}^n k/(theta+k) * (1 + sum_{j=1}^{m-1} h_j),
//
// which is P(X < T) for X the max of n unit exponentials and T an
// independent Gamma(m, theta) deadline.
//
// Exit codes (stable contract): 0 success/verified, 1 a requested check
// failed, 2 usage or parameter error, 3 internal oracle mismatch.
// Machine-readable output goes to stdout; diagnostics to stderr.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "binomlab/detail/format.hpp"
#include "binomlab/errors.hpp"
#include "binomlab/float_eval.hpp"
#include "binomlab/identity.hpp"
#include "binomlab/mc.hpp"
#include "binomlab/scan.hpp"
#include "binomlab/selftest.hpp"

namespace {

using namespace binomlab;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, sep)) parts.push_back(token);
  return parts;
}

std::int64_t parse_int_strict(const std::string& token) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [p, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || p != last || first == last) {
    throw ParseError("\"" + token + "\" is not an integer");
  }
  return value;
}

// "0..5" and "1,3,9" (and mixtures) become explicit lists.
std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> values;
  for (const std::string& token : split(text, ',')) {
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      values.push_back(parse_int_strict(token));
    } else {
      const std::int64_t lo = parse_int_strict(token.substr(0, dots));
      const std::int64_t hi = parse_int_strict(token.substr(dots + 2));
      if (hi < lo) throw ParseError("empty range \"" + token + "\"");
      if (hi - lo > 100000) throw ParseError("range \"" + token + "\" is too large");
      for (std::int64_t v = lo; v <= hi; ++v) values.push_back(v);
    }
  }
  if (values.empty()) throw ParseError("empty integer list");
  return values;
}

std::vector<Rational> parse_theta_list(const std::string& text) {
  std::vector<Rational> values;
  for (const std::string& token : split(text, ',')) {
    values.push_back(Rational::parse(token));
  }
  if (values.empty()) throw ParseError("empty theta list");
  return values;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// verify accepts the scan grid-file shape but only reads the instance
// lists; negative non-pole thetas are legal here, unlike in a scan.
struct VerifyGrid {
  std::vector<std::int64_t> n_values;
  std::vector<std::int64_t> m_values;
  std::vector<Rational> theta_values;
};

VerifyGrid parse_verify_grid(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("grid file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("m") ||
      !doc.contains("theta")) {
    throw ParseError("verify grid needs \"n\", \"m\", and \"theta\" arrays");
  }
  VerifyGrid grid;
  for (const auto& v : doc.at("n")) grid.n_values.push_back(v.get<std::int64_t>());
  for (const auto& v : doc.at("m")) grid.m_values.push_back(v.get<std::int64_t>());
  for (const auto& t : doc.at("theta")) {
    if (!t.is_string()) throw ParseError("grid theta values must be \"p/q\" strings");
    grid.theta_values.push_back(Rational::parse(t.get<std::string>()));
  }
  if (grid.n_values.empty() || grid.m_values.empty() || grid.theta_values.empty()) {
    throw ParseError("verify grid lists must be non-empty");
  }
  return grid;
}

int cmd_verify(const std::optional<std::int64_t>& n_opt, std::int64_t m,
               const std::string& theta_text, const std::string& grid_file) {
  std::vector<IdentityInstance> instances;
  if (!grid_file.empty()) {
    const VerifyGrid grid = parse_verify_grid(read_file(grid_file));
    for (std::int64_t n : grid.n_values) {
      for (std::int64_t gm : grid.m_values) {
        for (const Rational& theta : grid.theta_values) {
          instances.push_back({n, gm, theta});
        }
      }
    }
  } else {
    if (!n_opt.has_value() || theta_text.empty()) {
      throw ParseError("verify needs -n and --theta (or --grid-file)");
    }
    instances.push_back({*n_opt, m, Rational::parse(theta_text)});
  }

  bool all_verified = true;
  for (const IdentityInstance& inst : instances) {
    inst.validate();
    const Rational lhs = lhs_alternating_sum(inst);
    const Rational rhs = rhs_general(inst);
    const bool ok = lhs == rhs;
    all_verified = all_verified && ok;
    std::cout << inst.to_string() << ": " << lhs.to_string() << " = "
              << rhs.to_string() << (ok ? " VERIFIED" : " FAILED") << '\n';
  }
  if (!all_verified) {
    // unreachable unless the arithmetic is broken
    throw OracleMismatchError("exact closed forms disagreed");
  }
  return 0;
}

int cmd_eval(std::int64_t n, std::int64_t m, const std::string& theta_text,
             const std::string& strategy_tag, bool all) {
  const IdentityInstance inst{n, m, Rational::parse(theta_text)};
  std::vector<FloatEvalResult> rows;
  if (all || strategy_tag.empty()) {
    rows = error_report(inst);
  } else {
    rows.push_back(eval_float(inst, parse_strategy(strategy_tag)));
  }
  std::cout << float_result_csv_header() << '\n';
  for (const auto& row : rows) {
    std::cout << float_result_csv_row(inst, row) << '\n';
  }
  return 0;
}

int cmd_mc(std::int64_t n, std::int64_t m, const std::string& theta_text,
           std::uint64_t samples, const std::string& seed_text,
           std::uint64_t chunks, bool check, int threads) {
  if (samples == 0) throw ParseError("--samples must be >= 1");
  if (chunks == 0) throw ParseError("--chunks must be >= 1");
  const IdentityInstance inst{n, m, Rational::parse(theta_text)};
  StreamConfig cfg;
  cfg.seed = parse_seed(seed_text);
  cfg.chunk_count = chunks;
  cfg.samples_per_chunk = (samples + chunks - 1) / chunks;  // round up

  const McEstimate est = estimate_p_less(inst, cfg, threads);
  std::cout << mc_csv_header() << '\n' << mc_csv_row(est) << '\n';

  if (!check) return 0;
  const Rational exact = rhs_general(inst);
  const double exact_d = exact.to_double();
  const double gap = std::abs(est.p_hat - exact_d);
  const double band = 4.0 * est.std_error;
  const bool pass = gap <= band;
  std::cout << "exact " << exact.to_string() << " (" << detail::format_full(exact_d)
            << ")\n"
            << (pass ? "CHECK PASS" : "CHECK FAIL") << ": |p_hat - exact| = "
            << detail::format_sci6(gap) << (pass ? " <= " : " > ")
            << "4*stderr = " << detail::format_sci6(band) << '\n';
  return pass ? 0 : 1;
}

int cmd_scan(const std::string& grid_file, const std::string& n_list,
             const std::string& m_list, const std::string& theta_list,
             const std::string& strategies_list, std::uint64_t mc_samples,
             const std::string& seed_text, std::uint64_t chunks,
             const std::string& format_name, const std::string& out_path,
             int threads) {
  ScanGrid grid;
  if (!grid_file.empty()) {
    grid = parse_grid_json(read_file(grid_file));
  } else {
    if (n_list.empty() || theta_list.empty()) {
      throw ParseError("scan needs -n and --theta lists (or --grid-file)");
    }
    grid.n_values = parse_int_list(n_list);
    grid.m_values = m_list.empty() ? std::vector<std::int64_t>{1}
                                   : parse_int_list(m_list);
    grid.theta_values = parse_theta_list(theta_list);
    if (strategies_list.empty()) {
      grid.strategies = {EvalStrategy::NaiveSum, EvalStrategy::CompensatedSum,
                         EvalStrategy::PairwiseSum, EvalStrategy::ProductForm,
                         EvalStrategy::SymmetricDP};
    } else {
      for (const std::string& tag : split(strategies_list, ',')) {
        grid.strategies.push_back(parse_strategy(tag));
      }
    }
    if (mc_samples > 0) {
      if (chunks == 0) throw ParseError("--chunks must be >= 1");
      StreamConfig cfg;
      cfg.seed = parse_seed(seed_text);
      cfg.chunk_count = chunks;
      cfg.samples_per_chunk = (mc_samples + chunks - 1) / chunks;
      grid.mc = cfg;
    }
    grid.validate();
  }

  const auto rows = run_scan(grid, threads);
  const std::string payload = emit(rows, parse_report_format(format_name));
  if (out_path.empty() || out_path == "-") {
    std::cout << payload;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParseError("cannot open output file \"" + out_path + "\"");
    out << payload;
  }
  return 0;
}

int cmd_selftest(bool full, const std::string& seed_text, int threads) {
  SelftestOptions options;
  options.full = full;
  options.seed = parse_seed(seed_text);
  options.threads = threads;
  const auto results = run_selftest(options, &std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  if (failed == 0) {
    std::cout << "selftest: all " << results.size() << " suites passed\n";
    return 0;
  }
  std::cout << "selftest: " << failed << " of " << results.size()
            << " suites FAILED:\n";
  for (const auto& r : results) {
    if (!r.passed) std::cout << "  " << r.name << ": " << r.detail << '\n';
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "binomlab: exact, floating-point, and Monte Carlo laboratory for an "
      "alternating binomial identity family"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads for MC chunks and scan rows (0 = hardware; "
                 "results are identical for every value)")
      ->capture_default_str();
  app.fallthrough();

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "evaluate both exact closed forms and compare them");
  std::optional<std::int64_t> verify_n;
  std::int64_t verify_m = 1;
  std::string verify_theta;
  std::string verify_grid_file;
  auto* verify_n_opt =
      verify_cmd->add_option("-n", verify_n, "number of unit-rate exponentials");
  auto* verify_m_opt = verify_cmd->add_option("-m", verify_m, "gamma shape (default 1)");
  auto* verify_theta_opt =
      verify_cmd->add_option("--theta", verify_theta,
                             "rate parameter, exact rational \"p/q\" or integer");
  verify_cmd
      ->add_option("--grid-file", verify_grid_file,
                   "JSON grid file; verifies every (n, m, theta) in it")
      ->excludes(verify_n_opt)
      ->excludes(verify_m_opt)
      ->excludes(verify_theta_opt);

  // eval
  auto* eval_cmd = app.add_subcommand(
      "eval", "evaluate in 64-bit floats and report errors vs the exact oracle");
  std::int64_t eval_n = 0;
  std::int64_t eval_m = 1;
  std::string eval_theta;
  std::string eval_strategy;
  bool eval_all = false;
  eval_cmd->add_option("-n", eval_n, "number of unit-rate exponentials")
      ->required();
  eval_cmd->add_option("-m", eval_m, "gamma shape (default 1)");
  eval_cmd->add_option("--theta", eval_theta, "rate parameter \"p/q\"")->required();
  auto* eval_strategy_opt = eval_cmd->add_option(
      "--strategy", eval_strategy, "naive|compensated|pairwise|product|symdp");
  eval_cmd->add_flag("--all", eval_all, "all strategies applicable to this m")
      ->excludes(eval_strategy_opt);

  // mc
  auto* mc_cmd = app.add_subcommand(
      "mc", "Monte Carlo estimate of P(X < T) with a deterministic stream");
  std::int64_t mc_n = 0;
  std::int64_t mc_m = 1;
  std::string mc_theta;
  std::uint64_t mc_samples = 1000000;
  std::string mc_seed = "42";
  std::uint64_t mc_chunks = 64;
  bool mc_check = false;
  mc_cmd->add_option("-n", mc_n, "number of unit-rate exponentials")->required();
  mc_cmd->add_option("-m", mc_m, "gamma shape (default 1)");
  mc_cmd->add_option("--theta", mc_theta, "rate parameter \"p/q\", must be > 0")
      ->required();
  mc_cmd->add_option("--samples", mc_samples, "total sample count")
      ->capture_default_str();
  mc_cmd->add_option("--seed", mc_seed, "stream seed, decimal or 0x-hex")
      ->capture_default_str();
  mc_cmd->add_option("--chunks", mc_chunks, "independent substream count")
      ->capture_default_str();
  mc_cmd->add_flag("--check", mc_check,
                   "also print the exact value and PASS/FAIL on the 4-sigma band");

  // scan
  auto* scan_cmd = app.add_subcommand(
      "scan", "sweep a grid and emit a CSV or JSON report");
  std::string scan_grid_file, scan_n, scan_m, scan_theta, scan_strategies;
  std::uint64_t scan_mc_samples = 0;
  std::string scan_seed = "42";
  std::uint64_t scan_chunks = 64;
  std::string scan_format = "csv";
  std::string scan_out = "-";
  auto* scan_n_opt =
      scan_cmd->add_option("-n", scan_n, "n values, e.g. \"0..5\" or \"1,2,10\"");
  auto* scan_m_opt = scan_cmd->add_option("-m", scan_m, "m values (default \"1\")");
  auto* scan_theta_opt = scan_cmd->add_option(
      "--theta", scan_theta, "theta values, comma-separated rationals, e.g. \"1,1/2\"");
  auto* scan_strategies_opt = scan_cmd->add_option(
      "--strategies", scan_strategies, "comma-separated strategy tags (default: all)");
  auto* scan_mc_opt = scan_cmd->add_option(
      "--mc-samples", scan_mc_samples, "per-row Monte Carlo samples (0 = no MC column)");
  scan_cmd->add_option("--grid-file", scan_grid_file, "JSON grid file")
      ->excludes(scan_n_opt)
      ->excludes(scan_m_opt)
      ->excludes(scan_theta_opt)
      ->excludes(scan_strategies_opt)
      ->excludes(scan_mc_opt);
  scan_cmd->add_option("--seed", scan_seed, "base seed for the MC column")
      ->capture_default_str();
  scan_cmd->add_option("--chunks", scan_chunks, "substreams per row")
      ->capture_default_str();
  scan_cmd->add_option("--format", scan_format, "csv or json")
      ->capture_default_str();
  scan_cmd->add_option("--out", scan_out, "output path (\"-\" = stdout)")
      ->capture_default_str();

  // selftest
  auto* selftest_cmd = app.add_subcommand(
      "selftest", "run the built-in verification suites");
  bool selftest_fast = false;
  bool selftest_full = false;
  std::string selftest_seed = "42";
  selftest_cmd->add_flag("--fast", selftest_fast,
                         "exact and property suites only (seconds)");
  selftest_cmd->add_flag("--full", selftest_full,
                         "also run the Monte Carlo suites (minutes)");
  selftest_cmd->add_option("--seed", selftest_seed,
                           "seed for randomized thetas and MC streams")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (app.got_subcommand(verify_cmd)) {
      return cmd_verify(verify_n, verify_m, verify_theta, verify_grid_file);
    }
    if (app.got_subcommand(eval_cmd)) {
      return cmd_eval(eval_n, eval_m, eval_theta, eval_strategy, eval_all);
    }
    if (app.got_subcommand(mc_cmd)) {
      return cmd_mc(mc_n, mc_m, mc_theta, mc_samples, mc_seed, mc_chunks,
                    mc_check, threads);
    }
    if (app.got_subcommand(scan_cmd)) {
      return cmd_scan(scan_grid_file, scan_n, scan_m, scan_theta,
                      scan_strategies, scan_mc_samples, scan_seed, scan_chunks,
                      scan_format, scan_out, threads);
    }
    if (app.got_subcommand(selftest_cmd)) {
      if (selftest_fast && selftest_full) {
        throw ParseError("--fast and --full are mutually exclusive");
      }
      return cmd_selftest(selftest_full, selftest_seed, threads);
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const OracleMismatchError& e) {
    std::cerr << "oracle mismatch: " << e.what() << '\n';
    return 3;
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInstanceError& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const DegenerateConditioningError& e) {
    std::cerr << "degenerate conditioning: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
