#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gedanken/config.hpp"
#include "gedanken/decoherence.hpp"

namespace gedanken {

// Full single-run product: report plus everything needed to reproduce it.
struct ReportBundle {
  DecoherenceReport report;
  AuditSummary audit;
  nlohmann::ordered_json resolved_config;
  std::vector<std::string> warnings;
  double omega_min = 0.0;
  double omega_max = 0.0;
  int mode_count = 0;
  // Expected quanta between omega_min/8 and omega_min: sensitivity of
  // n_entangling to the infrared cutoff choice.
  double n_below_cutoff = 0.0;
  // Kept for the optional history/spectrum CSV exports.
  MultipoleHistory history;
  ModeAmplitudes amplitudes;
};

// histories -> amplitudes -> decoherence -> audit. Throws ValidationError /
// ResolutionError / AuditViolation; the CLI maps those to exit codes 2/3/4.
ReportBundle run_report(const RunConfig& config);

nlohmann::ordered_json report_json(const ReportBundle& bundle);
// CSV (single row) with the resolved config as leading comment lines.
std::string report_csv(const ReportBundle& bundle);

// Random-measurement audit driven by the audit config section.
// Throws ValidationError on trials == 0.
AuditSummary run_audit_command(const RunConfig& config);
nlohmann::ordered_json audit_json(const AuditSummary& summary);

// Sweep / regime-map products. regime_map forces a 2-axis spec and the
// regime output columns. `interrupted` is polled between grid points.
SweepTable run_sweep_command(const RunConfig& config, bool regime_map,
                             std::function<bool()> interrupted = {});
std::vector<std::string> config_comment_lines(const RunConfig& config);

}  // namespace gedanken
