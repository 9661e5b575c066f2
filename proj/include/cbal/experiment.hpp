#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace cbal {

/// Bad flags or an unknown algorithm id; maps to exit code 1 with usage text.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
  std::string command;  // gen, smooth, offline, online, oracle, lp-check, expmax, simulate
  std::optional<std::string> input;
  std::string algorithm;
  std::optional<double> tau;
  std::optional<std::string> tau_text;  // exact rational form when given ("11/4")
  std::optional<double> lambda;
  std::string what = "opt";        // oracle: opt, restart, eval
  std::optional<std::string> policy_file;
  std::string regime = "sqrtlog";  // expmax
  std::string kind = "mixed";      // gen / batch instance family
  std::size_t m = 3;
  std::size_t n = 3;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t batch = 0;  // > 0: run on `batch` seeded tiny instances instead of --in
  std::optional<std::string> output;  // gen / smooth instance output, oracle tree output, lp-check dump
};

struct ExperimentOutcome {
  int exit_code = 0;  // 0 success, 2 infeasible or failed verdict
  nlohmann::ordered_json report;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

const std::vector<std::string>& offline_algorithms();
const std::vector<std::string>& online_algorithms();

/// Dispatches the spec. Throws UsageError for invalid specs; other exceptions
/// are genuine errors. Output depends only on the settings, never on time or paths.
ExperimentOutcome run_experiment(const ExperimentSpec& spec);

std::string format_csv(const ExperimentOutcome& outcome);

}  // namespace cbal
