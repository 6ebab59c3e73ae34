#include "gedanken/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gedanken/errors.hpp"
#include "gedanken/numeric.hpp"

namespace gedanken {

namespace {

struct Location {
  std::string source;
  int line = 0;
  int column = 0;
};

[[noreturn]] void fail(const Location& loc, const std::string& msg) {
  throw ConfigError(loc.source, loc.line, loc.column, msg);
}

double parse_double(const std::string& text, const Location& loc,
                    const std::string& key) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    fail(loc, "invalid number for '" + key + "': '" + text + "'");
  }
  return v;
}

long parse_long(const std::string& text, const Location& loc,
                const std::string& key) {
  long v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    fail(loc, "invalid integer for '" + key + "': '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, const Location& loc,
                const std::string& key) {
  if (text == "true") return true;
  if (text == "false") return false;
  fail(loc, "invalid boolean for '" + key + "' (use true/false)");
}

AxisSpec& axis_slot(RunConfig& c, int which) {
  if (!c.sweep) c.sweep.emplace();
  auto& axes = c.sweep->axes;
  if (static_cast<int>(axes.size()) < which) {
    axes.resize(static_cast<std::size_t>(which));
  }
  return axes[static_cast<std::size_t>(which - 1)];
}

std::vector<SweepOutput> parse_outputs(const std::string& text,
                                       const Location& loc) {
  std::vector<SweepOutput> outs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    // trim
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    tok = tok.substr(b, e - b + 1);
    if (tok == "d_alice") outs.push_back(SweepOutput::DAlice);
    else if (tok == "d_bob") outs.push_back(SweepOutput::DBob);
    else if (tok == "n_entangling") outs.push_back(SweepOutput::NEntangling);
    else if (tok == "snr") outs.push_back(SweepOutput::Snr);
    else if (tok == "regime") outs.push_back(SweepOutput::Regime);
    else if (tok == "audit") outs.push_back(SweepOutput::Audit);
    else fail(loc, "unknown sweep output '" + tok + "'");
  }
  if (outs.empty()) fail(loc, "sweep.outputs is empty");
  return outs;
}

// Applies one key/value pair onto the config. Shared by the file parser and
// by --set overrides so both obey identical validation. `loc` points at the
// value; `key_loc` at the key itself.
void apply_entry(RunConfig& c, const std::string& key, const std::string& value,
                 const Location& loc, const Location& key_loc) {
  auto num = [&]() { return parse_double(value, loc, key); };
  auto integer = [&]() { return parse_long(value, loc, key); };

  if (key == "scenario.field_kind") {
    if (!parse_field_kind(value, c.scenario.field_kind)) {
      fail(loc, "invalid field_kind '" + value + "' (em | gravitational)");
    }
  } else if (key == "scenario.q_A") c.scenario.q_A = num();
  else if (key == "scenario.m_A") c.scenario.m_A = num();
  else if (key == "scenario.d") c.scenario.d = num();
  else if (key == "scenario.D") c.scenario.D = num();
  else if (key == "scenario.T_A") c.scenario.T_A = num();
  else if (key == "scenario.T_B") c.scenario.T_B = num();
  else if (key == "scenario.q_B") c.scenario.q_B = num();
  else if (key == "scenario.m_B") c.scenario.m_B = num();
  else if (key == "scenario.ramp") {
    if (!parse_ramp_window(value, c.scenario.ramp)) {
      fail(loc, "invalid ramp '" + value +
                    "' (smoothstep | gaussian | raised_cosine)");
    }
  } else if (key == "scenario.split_slowness") {
    c.scenario.split_slowness = num();
  } else if (key == "scenario.hold_factor") c.scenario.hold_factor = num();
  else if (key == "scenario.threshold_bob") c.scenario.thresholds.bob_snr = num();
  else if (key == "scenario.threshold_alice") {
    c.scenario.thresholds.alice_photons = num();
  } else if (key == "worldline.samples_per_ramp") {
    c.worldline.samples_per_ramp = static_cast<int>(integer());
  } else if (key == "worldline.pad_factor") c.worldline.pad_factor = num();
  else if (key == "basis.mode_count") {
    c.basis.mode_count = static_cast<int>(integer());
  } else if (key == "basis.omega_min_factor") c.basis.omega_min_factor = num();
  else if (key == "basis.omega_max_factor") c.basis.omega_max_factor = num();
  else if (key == "basis.dipole_coefficient") c.coefficients.dipole = num();
  else if (key == "basis.quadrupole_coefficient") {
    c.coefficients.quadrupole = num();
  } else if (key == "audit.trials") c.audit.trials = integer();
  else if (key == "audit.seed") {
    c.audit.seed = static_cast<std::uint64_t>(integer());
  } else if (key == "audit.max_modes") {
    c.audit.max_field_modes = static_cast<int>(integer());
  } else if (key == "audit.probe_modes") {
    c.audit.max_probe_modes = static_cast<int>(integer());
  } else if (key == "audit.squeeze_bound") c.audit.squeeze_bound = num();
  else if (key == "audit.displacement_scale") {
    c.audit.displacement_scale = num();
  } else if (key == "audit.tolerance") c.audit.tolerance = num();
  else if (key == "audit.synthetic") {
    c.audit.synthetic_amplitudes = parse_bool(value, loc, key);
  } else if (key == "sweep.axis1") axis_slot(c, 1).field = value;
  else if (key == "sweep.axis2") axis_slot(c, 2).field = value;
  else if (key == "sweep.scale1" || key == "sweep.scale2") {
    AxisSpec& a = axis_slot(c, key == "sweep.scale1" ? 1 : 2);
    if (value == "linear") a.scale = AxisScale::Linear;
    else if (value == "log") a.scale = AxisScale::Log;
    else fail(loc, "invalid scale '" + value + "' (linear | log)");
  } else if (key == "sweep.min1") axis_slot(c, 1).min = num();
  else if (key == "sweep.min2") axis_slot(c, 2).min = num();
  else if (key == "sweep.max1") axis_slot(c, 1).max = num();
  else if (key == "sweep.max2") axis_slot(c, 2).max = num();
  else if (key == "sweep.count1") {
    axis_slot(c, 1).count = static_cast<int>(integer());
  } else if (key == "sweep.count2") {
    axis_slot(c, 2).count = static_cast<int>(integer());
  } else if (key == "sweep.outputs") {
    if (!c.sweep) c.sweep.emplace();
    c.sweep->outputs = parse_outputs(value, loc);
  } else if (key == "output.path") c.output.path = value;
  else if (key == "output.format") {
    if (value == "csv") c.output.format = OutputFormat::Csv;
    else if (value == "json") c.output.format = OutputFormat::Json;
    else fail(loc, "invalid format '" + value + "' (csv | json)");
  } else if (key == "output.history_csv") c.output.history_csv = value;
  else if (key == "output.spectrum_csv") c.output.spectrum_csv = value;
  else fail(key_loc, "unknown key '" + key + "'");
}

bool valid_key_char(char ch) {
  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
         (ch >= '0' && ch <= '9') || ch == '_' || ch == '.';
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& source_name) {
  RunConfig config;
  std::map<std::string, int> seen;  // key -> first line
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comment.
    const auto hash = line.find('#');
    std::string body = hash == std::string::npos ? line : line.substr(0, hash);
    const auto kb = body.find_first_not_of(" \t\r");
    if (kb == std::string::npos) continue;
    const int key_col = static_cast<int>(kb) + 1;

    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      fail({source_name, lineno, key_col}, "expected 'key = value'");
    }
    std::string key = body.substr(kb, eq - kb);
    const auto ke = key.find_last_not_of(" \t");
    key = ke == std::string::npos ? std::string() : key.substr(0, ke + 1);
    if (key.empty()) {
      fail({source_name, lineno, key_col}, "missing key before '='");
    }
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (!valid_key_char(key[i])) {
        fail({source_name, lineno, key_col + static_cast<int>(i)},
             "malformed key '" + key + "'");
      }
    }

    const auto vb = body.find_first_not_of(" \t", eq + 1);
    const auto ve = body.find_last_not_of(" \t\r");
    if (vb == std::string::npos || ve < vb) {
      fail({source_name, lineno, static_cast<int>(eq) + 2},
           "missing value for '" + key + "'");
    }
    const std::string value = body.substr(vb, ve - vb + 1);
    const int value_col = static_cast<int>(vb) + 1;

    if (auto it = seen.find(key); it != seen.end()) {
      fail({source_name, lineno, key_col},
           "duplicate key '" + key + "' (first set on line " +
               std::to_string(it->second) + ")");
    }
    seen.emplace(key, lineno);
    apply_entry(config, key, value, {source_name, lineno, value_col},
                {source_name, lineno, key_col});
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path, 0, 0, "cannot open config file");
  }
  return parse_config(in, path);
}

RunConfig parse_config_text(const std::string& text,
                            const std::string& source_name) {
  std::istringstream in(text);
  return parse_config(in, source_name);
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("<override>", 0, 0,
                      "override must look like key=value: '" + assignment + "'");
  }
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (key.empty() || value.empty()) {
    throw ConfigError("<override>", 0, 0,
                      "override must look like key=value: '" + assignment + "'");
  }
  apply_entry(config, key, value, {"<override>", 0, 0}, {"<override>", 0, 0});
}

nlohmann::ordered_json RunConfig::resolved() const {
  nlohmann::ordered_json j;
  j["scenario"] = {
      {"field_kind", to_string(scenario.field_kind)},
      {"q_A", scenario.q_A},
      {"m_A", scenario.m_A},
      {"d", scenario.d},
      {"D", scenario.D},
      {"T_A", scenario.T_A},
      {"T_B", scenario.T_B},
      {"q_B", scenario.q_B},
      {"m_B", scenario.m_B},
      {"ramp", to_string(scenario.ramp)},
      {"split_slowness", scenario.split_slowness},
      {"hold_factor", scenario.hold_factor},
      {"threshold_bob", scenario.thresholds.bob_snr},
      {"threshold_alice", scenario.thresholds.alice_photons},
  };
  j["worldline"] = {
      {"samples_per_ramp", worldline.samples_per_ramp},
      {"pad_factor", worldline.pad_factor},
  };
  j["basis"] = {
      {"mode_count", basis.mode_count},
      {"omega_min_factor", basis.omega_min_factor},
      {"omega_max_factor", basis.omega_max_factor},
      {"dipole_coefficient", coefficients.dipole},
      {"quadrupole_coefficient", coefficients.quadrupole},
  };
  j["audit"] = {
      {"trials", audit.trials},
      {"seed", audit.seed},
      {"max_modes", audit.max_field_modes},
      {"probe_modes", audit.max_probe_modes},
      {"squeeze_bound", audit.squeeze_bound},
      {"displacement_scale", audit.displacement_scale},
      {"tolerance", audit.tolerance},
      {"synthetic", audit.synthetic_amplitudes},
  };
  if (sweep) {
    nlohmann::ordered_json js;
    for (std::size_t i = 0; i < sweep->axes.size(); ++i) {
      const AxisSpec& a = sweep->axes[i];
      const std::string n = std::to_string(i + 1);
      js["axis" + n] = a.field;
      js["scale" + n] = a.scale == AxisScale::Log ? "log" : "linear";
      js["min" + n] = a.min;
      js["max" + n] = a.max;
      js["count" + n] = a.count;
    }
    std::string outs;
    for (SweepOutput o : sweep->outputs) {
      if (!outs.empty()) outs += ",";
      switch (o) {
        case SweepOutput::DAlice: outs += "d_alice"; break;
        case SweepOutput::DBob: outs += "d_bob"; break;
        case SweepOutput::NEntangling: outs += "n_entangling"; break;
        case SweepOutput::Snr: outs += "snr"; break;
        case SweepOutput::Regime: outs += "regime"; break;
        case SweepOutput::Audit: outs += "audit"; break;
      }
    }
    js["outputs"] = outs;
    j["sweep"] = js;
  } else {
    j["sweep"] = nullptr;
  }
  j["output"] = {
      {"path", output.path},
      {"format", to_string(output.format)},
      {"history_csv", output.history_csv},
      {"spectrum_csv", output.spectrum_csv},
  };
  return j;
}

const char* to_string(OutputFormat f) {
  return f == OutputFormat::Csv ? "csv" : "json";
}

}  // namespace gedanken
