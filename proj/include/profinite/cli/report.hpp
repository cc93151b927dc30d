#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "profinite/cli/scenario.hpp"

namespace profinite::cli {

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::uint64_t cases = 0;
  /// Failing law and its counterexample, or the reason for skipping.
  nlohmann::json witness;
  std::optional<double> elapsed_ms;
};

struct RunOptions {
  unsigned jobs = 1;
  bool timings = false;
};

/// Names of the checks run by verify, in report order.
std::vector<std::string> check_names(const Scenario& s);

/// Runs every invariant suite at the scenario's parameters. Each check draws from
/// derive_seed(seed, name), so the report does not depend on `jobs`.
std::vector<CheckResult> run_verify(const Scenario& s, const RunOptions& options = {});

/// Report envelope: artifact, version, command, scenario echo and hash, plus `body`.
nlohmann::json make_report(const Scenario& s, const std::string& command, nlohmann::json body);

nlohmann::json verify_body(const std::vector<CheckResult>& results);
bool all_passed(const std::vector<CheckResult>& results);

nlohmann::json diff_tower_body(const Scenario& s);
nlohmann::json loop_table_body(const Scenario& s);
nlohmann::json complete_body(const Scenario& s);
/// diff-tower, loop-table rank comparison and complete sections together.
nlohmann::json summary_body(const Scenario& s);

/// CSV renderings of the same bodies.
std::string verify_csv(const std::vector<CheckResult>& results);
std::string diff_tower_csv(const nlohmann::json& body);
std::string loop_table_csv(const nlohmann::json& body);
std::string complete_csv(const nlohmann::json& body);

}  // namespace profinite::cli
