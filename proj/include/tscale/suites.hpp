#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tscale/corpus.hpp"
#include "tscale/timescale.hpp"
#include "tscale/tolerances.hpp"

namespace tscale {

// A scale under test together with the label used in reports.
struct LabeledScale {
  std::string label;
  TimeScale scale;
};

// The six default corpus scales: reals [0,1], h_integers (h = 1, [0,10]),
// q_scale (q = 0.5, N = 10), mixed, cantor_approx (n = 3), factorial (N = 12).
std::vector<LabeledScale> default_corpus();

struct SuiteCase {
  std::string scale;
  std::string function;
  std::string where;
  double value_a = 0.0;
  double value_b = 0.0;
  double residual = 0.0;
  bool pass = false;
  nlohmann::json detail;  // suite-specific extras, null when absent
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<SuiteCase> cases;
  double max_residual = 0.0;
  bool pass = true;
};

struct SuiteOptions {
  // Replaces the suite's own scale list when set.
  std::optional<LabeledScale> scale;
  // Family parameters given on the command line. The counterexample suite
  // reads N and c from here.
  ParamMap params;
  // Replaces the suite's own function list when non-empty.
  std::vector<std::string> functions;
  std::uint64_t seed = 0;
  Tolerances tol;
};

std::vector<std::string> suite_names();

// Runs a named suite. Case k draws its randomness from mix_seed(seed, k).
// Throws Errc::invalid_parameter for an unknown suite name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& opts);

nlohmann::json to_json(const SuiteCase& c);
nlohmann::json to_json(const SuiteReport& r);
std::string render_csv(const SuiteReport& r);
std::string render_pretty(const SuiteReport& r);

}  // namespace tscale
