#include "gedanken/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "gedanken/decoherence.hpp"
#include "gedanken/errors.hpp"
#include "gedanken/numeric.hpp"

namespace gedanken {

namespace {

double* scenario_field(Scenario& s, const std::string& name) {
  if (name == "q_A") return &s.q_A;
  if (name == "m_A") return &s.m_A;
  if (name == "d") return &s.d;
  if (name == "D") return &s.D;
  if (name == "T_A") return &s.T_A;
  if (name == "T_B") return &s.T_B;
  if (name == "q_B") return &s.q_B;
  if (name == "m_B") return &s.m_B;
  return nullptr;
}

bool wants(const std::vector<SweepOutput>& outputs, SweepOutput o) {
  return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

SweepRow evaluate_point(const SweepSpec& spec, const SweepOptions& options,
                        const std::vector<double>& axis_values) {
  SweepRow row;
  row.axis_values = axis_values;
  Scenario s = spec.base;
  for (std::size_t a = 0; a < spec.axes.size(); ++a) {
    *scenario_field(s, spec.axes[a].field) = axis_values[a];
  }
  const auto& outs = spec.outputs;
  try {
    s.validate();
    if (wants(outs, SweepOutput::Snr) || wants(outs, SweepOutput::DBob)) {
      row.snr_whichpath = whichpath_snr(s);
    }
    if (wants(outs, SweepOutput::DBob)) {
      const auto [b1, b2] = probe_displacement_labels(row.snr_whichpath);
      row.d_bob = bob_decoherence(b1, b2);
    }
    if (wants(outs, SweepOutput::Regime)) {
      row.regime = classify_regime(s);
    }
    const bool needs_radiation = wants(outs, SweepOutput::DAlice) ||
                                 wants(outs, SweepOutput::NEntangling) ||
                                 wants(outs, SweepOutput::Audit);
    if (needs_radiation) {
      const MultipoleHistory h = build_branch_difference(s, options.worldline);
      const ModeBasis basis = default_basis(h, s.field_kind, options.basis);
      const ModeAmplitudes a1 =
          spectral_amplitudes(h, basis, options.coefficients);
      const ModeAmplitudes a2 = ModeAmplitudes::zero(basis);
      row.n_entangling = photon_number(a1);
      row.d_alice = alice_decoherence(a1, a2);
      if (wants(outs, SweepOutput::Audit)) {
        const CoherentLabel lab1 =
            strongest_modes(a1, options.audit.max_field_modes);
        const CoherentLabel lab2 = CoherentLabel::vacuum(lab1.modes());
        AuditOptions opt = options.audit;
        opt.workers = 1;  // grid points already run in parallel
        const AuditSummary sum = run_audit_trials(opt, &lab1, &lab2);
        row.audit_margin = sum.worst_inequality_margin;
        row.audit_residual = sum.worst_identity_residual;
      }
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 2) {
    throw ValidationError("sweep needs 1 or 2 axes");
  }
  for (const AxisSpec& axis : axes) {
    Scenario probe = base;
    if (scenario_field(probe, axis.field) == nullptr) {
      throw ValidationError("unknown sweep axis field: " + axis.field);
    }
    if (axis.count < 2) throw ValidationError("axis count must be >= 2");
    if (!(axis.min < axis.max)) {
      throw ValidationError("axis range must satisfy min < max");
    }
    if (axis.scale == AxisScale::Log && !(axis.min > 0.0)) {
      throw ValidationError("log axis requires min > 0");
    }
  }
  if (outputs.empty()) throw ValidationError("sweep requests no outputs");
}

std::vector<double> axis_grid(const AxisSpec& axis) {
  std::vector<double> grid(static_cast<std::size_t>(axis.count));
  const double la =
      axis.scale == AxisScale::Log ? std::log(axis.min) : axis.min;
  const double lb =
      axis.scale == AxisScale::Log ? std::log(axis.max) : axis.max;
  for (int i = 0; i < axis.count; ++i) {
    if (i == 0) {
      grid[0] = axis.min;
    } else if (i == axis.count - 1) {
      grid[static_cast<std::size_t>(i)] = axis.max;
    } else {
      const double f =
          static_cast<double>(i) / static_cast<double>(axis.count - 1);
      const double v = la * (1.0 - f) + lb * f;
      grid[static_cast<std::size_t>(i)] =
          axis.scale == AxisScale::Log ? std::exp(v) : v;
    }
  }
  return grid;
}

SweepTable run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  spec.validate();
  spec.base.validate();

  SweepTable table;
  for (const AxisSpec& axis : spec.axes) table.columns.push_back(axis.field);
  const auto& outs = spec.outputs;
  if (wants(outs, SweepOutput::DAlice)) table.columns.push_back("d_alice");
  if (wants(outs, SweepOutput::DBob)) table.columns.push_back("d_bob");
  if (wants(outs, SweepOutput::NEntangling)) {
    table.columns.push_back("n_entangling");
  }
  if (wants(outs, SweepOutput::Snr)) table.columns.push_back("snr_whichpath");
  if (wants(outs, SweepOutput::Regime)) {
    table.columns.push_back("bob_can_know");
    table.columns.push_back("alice_decoheres");
    table.columns.push_back("narrative");
  }
  if (wants(outs, SweepOutput::Audit)) {
    table.columns.push_back("audit_margin");
    table.columns.push_back("audit_residual");
  }
  table.columns.push_back("error");

  std::vector<std::vector<double>> grids;
  grids.reserve(spec.axes.size());
  for (const AxisSpec& axis : spec.axes) grids.push_back(axis_grid(axis));

  std::size_t total = 1;
  for (const auto& g : grids) total *= g.size();
  table.rows.resize(total);

  auto point_values = [&](std::size_t flat) {
    std::vector<double> vals(grids.size());
    if (grids.size() == 1) {
      vals[0] = grids[0][flat];
    } else {
      // Row-major: axis 0 outermost.
      vals[0] = grids[0][flat / grids[1].size()];
      vals[1] = grids[1][flat % grids[1].size()];
    }
    return vals;
  };

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&]() {
    for (;;) {
      if (stop.load()) break;
      const std::size_t i = next.fetch_add(1);
      if (i >= total) break;
      if (options.interrupted && options.interrupted()) {
        stop.store(true);
        table.rows[i] = SweepRow{};
        table.rows[i].axis_values = point_values(i);
        table.rows[i].error = "skipped: interrupted";
        break;
      }
      table.rows[i] = evaluate_point(spec, options, point_values(i));
    }
  };

  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (stop.load()) {
    // Indexes are claimed in order, so everything before the first skipped
    // or unclaimed row is a fully evaluated prefix.
    std::size_t keep = std::min<std::size_t>(next.load(), total);
    for (std::size_t i = 0; i < keep; ++i) {
      if (table.rows[i].error.rfind("skipped:", 0) == 0) {
        keep = i;
        break;
      }
    }
    table.rows.resize(keep);
    table.truncated = true;
  }
  return table;
}

PowerLawFit fit_powerlaw(const std::vector<double>& xs,
                         const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw ValidationError("fit: size mismatch");
  if (xs.size() < 5) throw ValidationError("fit: need at least 5 points");
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw ValidationError("fit: data must be strictly positive");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  KahanSum sx, sy;
  for (std::size_t i = 0; i < n; ++i) {
    sx.add(lx[i]);
    sy.add(ly[i]);
  }
  const double mx = sx.value() / static_cast<double>(n);
  const double my = sy.value() / static_cast<double>(n);
  KahanSum sxx, sxy;
  for (std::size_t i = 0; i < n; ++i) {
    sxx.add((lx[i] - mx) * (lx[i] - mx));
    sxy.add((lx[i] - mx) * (ly[i] - my));
  }
  PowerLawFit fit;
  fit.exponent = sxy.value() / sxx.value();
  fit.prefactor = std::exp(my - fit.exponent * mx);
  KahanSum ss_res, ss_tot;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = my + fit.exponent * (lx[i] - mx);
    ss_res.add((ly[i] - pred) * (ly[i] - pred));
    ss_tot.add((ly[i] - my) * (ly[i] - my));
  }
  fit.r_squared =
      ss_tot.value() > 0.0 ? 1.0 - ss_res.value() / ss_tot.value() : 1.0;
  return fit;
}

namespace {

std::vector<std::string> row_cells(const std::vector<std::string>& columns,
                                   const SweepRow& row) {
  std::vector<std::string> cells;
  cells.reserve(columns.size());
  auto num = [](double v) {
    return std::isnan(v) ? std::string() : format_double(v);
  };
  // The leading columns are always the axes, in spec order.
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c < row.axis_values.size()) {
      cells.push_back(format_double(row.axis_values[c]));
      continue;
    }
    const std::string& col = columns[c];
    if (col == "d_alice") cells.push_back(num(row.d_alice));
    else if (col == "d_bob") cells.push_back(num(row.d_bob));
    else if (col == "n_entangling") cells.push_back(num(row.n_entangling));
    else if (col == "snr_whichpath") cells.push_back(num(row.snr_whichpath));
    else if (col == "bob_can_know") {
      cells.push_back(row.regime ? (row.regime->bob_can_know ? "true" : "false")
                                 : std::string());
    } else if (col == "alice_decoheres") {
      cells.push_back(
          row.regime ? (row.regime->alice_decoheres ? "true" : "false")
                     : std::string());
    } else if (col == "narrative") {
      cells.push_back(row.regime ? to_string(row.regime->narrative)
                                 : std::string());
    } else if (col == "audit_margin") {
      cells.push_back(num(row.audit_margin));
    } else if (col == "audit_residual") {
      cells.push_back(num(row.audit_residual));
    } else if (col == "error") {
      cells.push_back(row.error);
    } else {
      cells.emplace_back();
    }
  }
  return cells;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepTable& table,
                     const std::vector<std::string>& header_comments) {
  for (const std::string& line : header_comments) os << "# " << line << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c > 0 ? "," : "") << table.columns[c];
  }
  os << '\n';
  for (const SweepRow& row : table.rows) {
    const auto cells = row_cells(table.columns, row);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << (c > 0 ? "," : "") << cells[c];
    }
    os << '\n';
  }
  if (table.truncated) os << "# truncated\n";
}

void write_sweep_jsonl(std::ostream& os, const SweepTable& table) {
  for (const SweepRow& row : table.rows) {
    nlohmann::ordered_json j;
    const auto cells = row_cells(table.columns, row);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const std::string& col = table.columns[c];
      const std::string& cell = cells[c];
      if (cell.empty() && col != "error") {
        j[col] = nullptr;
      } else if (col == "narrative" || col == "error") {
        j[col] = cell;
      } else if (cell == "true" || cell == "false") {
        j[col] = (cell == "true");
      } else {
        j[col] = std::stod(cell);
      }
    }
    os << j.dump() << '\n';
  }
  if (table.truncated) os << "{\"truncated\":true}\n";
}

}  // namespace gedanken
