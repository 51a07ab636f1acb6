#pragma once

// Command implementations behind the toristack CLI. Each returns the text to
// print and the process exit code, so they can be exercised in-process.

#include <string>

#include "json.hpp"
#include "toristack/chart.hpp"
#include "toristack/document.hpp"
#include "toristack/fan.hpp"

namespace toristack {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,   // the document parsed but violates an axiom
  kExitParse = 2,     // malformed JSON or wrong field types; bad CLI usage
  kExitInternal = 3,  // an internal consistency check failed
};

enum class OutputFormat { json, text };

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;  // for stdout
};

constexpr std::size_t kDefaultDegreeBound = 6;

CommandResult run_validate(const std::string& path, OutputFormat format);
CommandResult run_report(const std::string& path, OutputFormat format, std::size_t degree_bound = kDefaultDegreeBound);
CommandResult run_mfr(const std::string& path, const RayIndexSet& cone, OutputFormat format);
CommandResult run_stabilizer(const std::string& path, const RayIndexSet& cone, OutputFormat format);
CommandResult run_complete(const std::string& path, OutputFormat format);

// Building blocks, exposed for tests.
nlohmann::json to_json(const Integer& v);
nlohmann::json to_json(const Rational& v);
nlohmann::json to_json(const IntVector& v);
nlohmann::json to_json(const RationalVector& v);
/// Invariant factors, order and a "μ_d1 × μ_d2" label of the Cartier dual.
nlohmann::json group_json(const FiniteAbelianGroup& g);
nlohmann::json issues_json(const std::vector<FanIssue>& issues);
nlohmann::json fan_report(const StackyFan& sf, const std::vector<Integer>& characteristics,
                          std::size_t degree_bound);
nlohmann::json mfr_report(const StackyFan& sf, std::size_t cone_id);
nlohmann::json stabilizer_report(const StackyFan& sf, std::size_t cone_id);

/// Indented plain-text rendering of a JSON report (keys in sorted order).
std::string render_text(const nlohmann::json& j);

}  // namespace toristack
