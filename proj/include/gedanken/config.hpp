#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gedanken/audit.hpp"
#include "gedanken/radiation.hpp"
#include "gedanken/scenario.hpp"
#include "gedanken/sweep.hpp"
#include "gedanken/worldline.hpp"

namespace gedanken {

enum class OutputFormat { Csv, Json };

struct OutputOptions {
  std::string path = "-";  // "-" = stdout
  OutputFormat format = OutputFormat::Csv;
  std::string history_csv;   // optional history export path
  std::string spectrum_csv;  // optional spectrum export path
};

// Fully resolved run configuration. A config file with only scenario keys
// is complete; every other section has documented defaults (README).
struct RunConfig {
  Scenario scenario;
  WorldlineOptions worldline;
  BasisOptions basis;
  RadiationCoefficients coefficients;
  AuditOptions audit;
  std::optional<SweepSpec> sweep;  // axes/outputs only; base = scenario
  OutputOptions output;

  // Full resolved key set (after defaults), suitable for embedding in
  // reports for reproducibility.
  nlohmann::ordered_json resolved() const;
};

// Parses the flat dotted-key grammar:
//   section.key = value        # comment
// Unknown keys, malformed lines, duplicate keys and bad values raise
// ConfigError with a source:line:column location.
RunConfig parse_config(std::istream& in, const std::string& source_name);
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text,
                            const std::string& source_name = "<config>");

// One "key=value" override (CLI flags take precedence over the file).
void apply_override(RunConfig& config, const std::string& assignment);

const char* to_string(OutputFormat f);

}  // namespace gedanken
