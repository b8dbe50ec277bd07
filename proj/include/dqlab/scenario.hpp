#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dqlab/matcore.hpp"
#include "dqlab/rng.hpp"

namespace dqlab {

enum class ScenarioCommand { kRabi, kHadamard, kExpand, kFidelitySweep, kCz, kDephase };
enum class ReportFormat { kCsv, kJson };

ScenarioCommand parse_command(const std::string& name);
std::string command_name(ScenarioCommand command);

// Parsed and validated run description. Command parameters are held as a
// string -> value map; each command validates its own keys strictly, so a
// typo fails before any computation starts.
struct ScenarioConfig {
  ScenarioCommand command = ScenarioCommand::kRabi;
  std::map<std::string, std::variant<double, std::vector<double>, std::string>> params;
  std::string output_path;
  std::uint64_t seed = kDefaultSeed;
  ReportFormat format = ReportFormat::kCsv;
};

// Parses the JSON config text. Top-level keys: "params" (object, optional),
// "seed" (non-negative integer, optional), "format" ("csv" | "json",
// optional), "output" (string, optional). Unknown keys are rejected.
// Malformed JSON raises ConfigError carrying line and column.
ScenarioConfig parse_config(ScenarioCommand command, const std::string& json_text);

// One named table of double-valued columns.
struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

using ScalarValue = std::variant<double, Complex>;

struct ScenarioReport {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, ScalarValue>> scalars;  // stable order
  std::vector<ReportTable> tables;
};

// Runs the configured scenario and returns its report. Throws
// ValidationError / ConfigError on bad inputs, NumericalError on
// numerical failure.
ScenarioReport run_scenario(const ScenarioConfig& cfg);

// Serializes a report. CSV: '#'-prefixed scalar lines, then each table as
// "# table: <name>" followed by a header row and %.17g data rows. JSON:
// stable key order, complex scalars as {"re": ..., "im": ...}.
std::string emit_report(const ScenarioReport& report, ReportFormat format);

// Full pipeline: run the scenario and write the report to cfg.output_path.
// Throws NumericalError when the file cannot be written.
void run_and_write(const ScenarioConfig& cfg);

}  // namespace dqlab
