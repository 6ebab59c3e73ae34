#include "gedanken/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "gedanken/errors.hpp"
#include "gedanken/numeric.hpp"

namespace gedanken {

namespace {

struct RadiationProducts {
  MultipoleHistory history;
  ModeBasis basis;
  ModeAmplitudes amplitudes;
};

RadiationProducts radiate(const RunConfig& config) {
  RadiationProducts p;
  p.history = build_branch_difference(config.scenario, config.worldline);
  p.basis = default_basis(p.history, config.scenario.field_kind, config.basis);
  p.amplitudes = spectral_amplitudes(p.history, p.basis, config.coefficients);
  return p;
}

}  // namespace

ReportBundle run_report(const RunConfig& config) {
  ReportBundle bundle;
  bundle.warnings = config.scenario.validate();
  bundle.resolved_config = config.resolved();

  RadiationProducts rad = radiate(config);
  bundle.history = rad.history;
  bundle.amplitudes = rad.amplitudes;
  bundle.omega_min = rad.basis.min_frequency();
  bundle.omega_max = rad.basis.max_frequency();
  bundle.mode_count = static_cast<int>(rad.basis.size());
  bundle.n_below_cutoff = band_photon_number(
      rad.history, config.scenario.field_kind, bundle.omega_min / 8.0,
      bundle.omega_min, 128, config.coefficients);

  DecoherenceReport& r = bundle.report;
  const ModeAmplitudes zero = ModeAmplitudes::zero(rad.basis);
  r.n_entangling = photon_number(rad.amplitudes);
  r.d_alice = alice_decoherence(rad.amplitudes, zero);
  r.snr_whichpath = whichpath_snr(config.scenario);
  if (!std::isfinite(r.n_entangling) || !std::isfinite(r.snr_whichpath)) {
    throw ResolutionError(
        "decoherence quantities overflow the double range for these parameters");
  }
  const auto [b1, b2] = probe_displacement_labels(r.snr_whichpath);
  r.d_bob = bob_decoherence(b1, b2);
  r.regime = classify_regime(config.scenario);

  const CoherentLabel field1 =
      strongest_modes(rad.amplitudes, config.audit.max_field_modes);
  const CoherentLabel field2 = CoherentLabel::vacuum(field1.modes());
  AuditOptions audit_options = config.audit;
  audit_options.synthetic_amplitudes = false;
  bundle.audit = run_audit_trials(audit_options, &field1, &field2);
  r.audit_pass = bundle.audit.pass;

  // Internal consistency (same functional through two code paths).
  const double d_from_n = 1.0 - std::exp(-0.5 * r.n_entangling);
  if (std::abs(d_from_n - r.d_alice) > 1e-12) {
    throw AuditViolation("d_alice inconsistent with n_entangling");
  }
  // Complementarity bound for protocol-respecting runs. A violation here
  // falsifies the implementation, not the physics.
  if (r.regime.narrative != Narrative::ProtocolViolated &&
      r.d_bob > r.d_alice + 1e-10) {
    throw AuditViolation("d_bob exceeds d_alice under the protocol");
  }
  return bundle;
}

nlohmann::ordered_json report_json(const ReportBundle& bundle) {
  const DecoherenceReport& r = bundle.report;
  nlohmann::ordered_json j;
  j["config"] = bundle.resolved_config;
  j["results"] = {
      {"d_alice", r.d_alice},
      {"d_bob", r.d_bob},
      {"n_entangling", r.n_entangling},
      {"snr_whichpath", r.snr_whichpath},
      {"regime",
       {{"bob_can_know", r.regime.bob_can_know},
        {"alice_decoheres", r.regime.alice_decoheres},
        {"narrative", to_string(r.regime.narrative)}}},
      {"audit_pass", r.audit_pass},
  };
  j["audit"] = audit_json(bundle.audit);
  j["basis"] = {
      {"omega_min", bundle.omega_min},
      {"omega_max", bundle.omega_max},
      {"mode_count", bundle.mode_count},
      {"n_below_omega_min", bundle.n_below_cutoff},
  };
  // d_bob comes from a declared model bridge, not from first principles.
  j["model_notes"] = {{"d_bob_bridge", "d_bob = 1 - exp(-snr^2/8)"}};
  j["warnings"] = bundle.warnings;
  return j;
}

namespace {

std::vector<std::string> flatten_config_lines(const nlohmann::ordered_json& j) {
  std::vector<std::string> lines;
  for (const auto& [section, body] : j.items()) {
    if (body.is_null()) continue;
    for (const auto& [key, value] : body.items()) {
      std::string text;
      if (value.is_string()) {
        text = value.get<std::string>();
      } else if (value.is_boolean()) {
        text = value.get<bool>() ? "true" : "false";
      } else if (value.is_number_float()) {
        text = format_double(value.get<double>());
      } else {
        text = value.dump();
      }
      lines.push_back(section + "." + key + " = " + text);
    }
  }
  return lines;
}

}  // namespace

std::vector<std::string> config_comment_lines(const RunConfig& config) {
  return flatten_config_lines(config.resolved());
}

std::string report_csv(const ReportBundle& bundle) {
  const DecoherenceReport& r = bundle.report;
  std::ostringstream os;
  os << "# resolved config\n";
  for (const std::string& line : flatten_config_lines(bundle.resolved_config)) {
    os << "# " << line << '\n';
  }
  os << "d_alice,d_bob,n_entangling,snr_whichpath,bob_can_know,"
        "alice_decoheres,narrative,audit_pass\n";
  os << format_double(r.d_alice) << ',' << format_double(r.d_bob) << ','
     << format_double(r.n_entangling) << ',' << format_double(r.snr_whichpath)
     << ',' << (r.regime.bob_can_know ? "true" : "false") << ','
     << (r.regime.alice_decoheres ? "true" : "false") << ','
     << to_string(r.regime.narrative) << ','
     << (r.audit_pass ? "true" : "false") << '\n';
  return os.str();
}

AuditSummary run_audit_command(const RunConfig& config) {
  if (config.audit.trials <= 0) {
    throw ValidationError("audit.trials must be >= 1 (empty audit rejected)");
  }
  if (config.audit.synthetic_amplitudes) {
    return run_audit_trials(config.audit);
  }
  RadiationProducts rad = radiate(config);
  const CoherentLabel field1 =
      strongest_modes(rad.amplitudes, config.audit.max_field_modes);
  const CoherentLabel field2 = CoherentLabel::vacuum(field1.modes());
  return run_audit_trials(config.audit, &field1, &field2);
}

nlohmann::ordered_json audit_json(const AuditSummary& summary) {
  return nlohmann::ordered_json{
      {"trials", summary.trials},
      {"seed", summary.seed},
      {"worst_inequality_margin", summary.worst_inequality_margin},
      {"worst_identity_residual", summary.worst_identity_residual},
      {"worst_order_residual", summary.worst_order_residual},
      {"pass", summary.pass},
  };
}

SweepTable run_sweep_command(const RunConfig& config, bool regime_map,
                             std::function<bool()> interrupted) {
  if (!config.sweep) {
    throw ValidationError("config has no sweep section");
  }
  SweepSpec spec = *config.sweep;
  spec.base = config.scenario;
  if (regime_map) {
    if (spec.axes.size() != 2) {
      throw ValidationError("regime-map needs exactly 2 sweep axes");
    }
    spec.outputs = {SweepOutput::Snr, SweepOutput::Regime};
  }
  SweepOptions options;
  options.worldline = config.worldline;
  options.basis = config.basis;
  options.coefficients = config.coefficients;
  options.audit = config.audit;
  options.workers = config.audit.workers;
  options.interrupted = std::move(interrupted);
  return run_sweep(spec, options);
}

}  // namespace gedanken
