#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gedanken/audit.hpp"
#include "gedanken/radiation.hpp"
#include "gedanken/scenario.hpp"
#include "gedanken/worldline.hpp"

namespace gedanken {

enum class AxisScale { Linear, Log };

struct AxisSpec {
  std::string field;  // Scenario field name: q_A, m_A, d, D, T_A, T_B, q_B, m_B
  AxisScale scale = AxisScale::Log;
  double min = 1.0;
  double max = 10.0;
  int count = 2;
};

enum class SweepOutput { DAlice, DBob, NEntangling, Snr, Regime, Audit };

struct SweepSpec {
  Scenario base;
  std::vector<AxisSpec> axes;  // 1 or 2
  std::vector<SweepOutput> outputs = {SweepOutput::DAlice, SweepOutput::DBob,
                                      SweepOutput::NEntangling,
                                      SweepOutput::Snr, SweepOutput::Regime};
  void validate() const;  // throws ValidationError
};

struct SweepOptions {
  WorldlineOptions worldline;
  BasisOptions basis;
  RadiationCoefficients coefficients;
  AuditOptions audit;
  int workers = 1;
  // Polled between grid points; a partial table is flushed with a
  // truncation marker when it returns true.
  std::function<bool()> interrupted;
};

// One grid point. Quantities not requested (or not reached before a
// per-point failure) are NaN and render as empty cells.
struct SweepRow {
  std::vector<double> axis_values;
  double d_alice = std::numeric_limits<double>::quiet_NaN();
  double d_bob = std::numeric_limits<double>::quiet_NaN();
  double n_entangling = std::numeric_limits<double>::quiet_NaN();
  double snr_whichpath = std::numeric_limits<double>::quiet_NaN();
  std::optional<RegimeLabel> regime;
  double audit_margin = std::numeric_limits<double>::quiet_NaN();
  double audit_residual = std::numeric_limits<double>::quiet_NaN();
  std::string error;  // empty on success
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
  bool truncated = false;
};

// Grid values for one axis; endpoints are exact.
std::vector<double> axis_grid(const AxisSpec& axis);

// Row-major over the axes; per-point failures are recorded in the row's
// error column and never abort the sweep. Deterministic for a fixed spec
// regardless of worker count.
SweepTable run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

// Least-squares line in log-log coordinates; requires >= 5 strictly
// positive points.
PowerLawFit fit_powerlaw(const std::vector<double>& xs,
                         const std::vector<double>& ys);

void write_sweep_csv(std::ostream& os, const SweepTable& table,
                     const std::vector<std::string>& header_comments = {});
void write_sweep_jsonl(std::ostream& os, const SweepTable& table);

}  // namespace gedanken
