// Command-line front end: report | sweep | audit | regime-map.
// Exit codes: 0 ok, 2 config error, 3 numerical-resolution failure,
// 4 audit violation (a numerical falsification of the implementation),
// 130 interrupted.

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gedanken/errors.hpp"
#include "gedanken/pipeline.hpp"

namespace {

std::atomic<bool> g_interrupted{false};

void handle_sigint(int) { g_interrupted.store(true); }

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  std::string format;
  int workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("config", args.config_path, "run configuration file")
      ->required();
  cmd->add_option("--set", args.overrides,
                  "override a config key (key=value); repeatable");
  cmd->add_option("-o,--output", args.output,
                  "output path ('-' for stdout); overrides output.path");
  cmd->add_option("--format", args.format, "csv | json; overrides output.format");
  cmd->add_option("--workers", args.workers,
                  "worker threads (default: GEDANKEN_WORKERS or 1)");
}

int resolve_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("GEDANKEN_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

gedanken::RunConfig load_config(const CommonArgs& args) {
  gedanken::RunConfig config = gedanken::parse_config_file(args.config_path);
  for (const std::string& assignment : args.overrides) {
    gedanken::apply_override(config, assignment);
  }
  if (!args.output.empty()) config.output.path = args.output;
  if (!args.format.empty()) {
    gedanken::apply_override(config, "output.format=" + args.format);
  }
  config.audit.workers = resolve_workers(args.workers);
  return config;
}

// All payload output goes through the configured path; only diagnostics and
// warnings reach the terminal streams directly.
void write_payload(const gedanken::RunConfig& config, const std::string& text) {
  if (config.output.path == "-" || config.output.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(config.output.path, std::ios::binary);
  if (!out) {
    throw gedanken::ValidationError("cannot open output path: " +
                                    config.output.path);
  }
  out << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw gedanken::ValidationError("cannot open output path: " + path);
  }
  out << text;
}

int run_report_cmd(const CommonArgs& args) {
  gedanken::RunConfig config = load_config(args);
  gedanken::ReportBundle bundle = gedanken::run_report(config);
  for (const std::string& w : bundle.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  if (config.output.format == gedanken::OutputFormat::Json) {
    write_payload(config, gedanken::report_json(bundle).dump(2) + "\n");
  } else {
    write_payload(config, gedanken::report_csv(bundle));
  }
  if (!config.output.history_csv.empty()) {
    std::ostringstream os;
    gedanken::write_history_csv(os, bundle.history);
    write_file(config.output.history_csv, os.str());
  }
  if (!config.output.spectrum_csv.empty()) {
    std::ostringstream os;
    gedanken::write_spectrum_csv(os, bundle.amplitudes);
    write_file(config.output.spectrum_csv, os.str());
  }
  return bundle.audit.pass ? 0 : 4;
}

int run_sweep_cmd(const CommonArgs& args, bool regime_map) {
  gedanken::RunConfig config = load_config(args);
  gedanken::SweepTable table = gedanken::run_sweep_command(
      config, regime_map, [] { return g_interrupted.load(); });
  std::ostringstream os;
  if (config.output.format == gedanken::OutputFormat::Json) {
    gedanken::write_sweep_jsonl(os, table);
  } else {
    gedanken::write_sweep_csv(os, table,
                              gedanken::config_comment_lines(config));
  }
  write_payload(config, os.str());
  return table.truncated ? 130 : 0;
}

int run_audit_cmd(const CommonArgs& args) {
  gedanken::RunConfig config = load_config(args);
  const gedanken::AuditSummary summary = gedanken::run_audit_command(config);
  write_payload(config, gedanken::audit_json(summary).dump(2) + "\n");
  return summary.pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, handle_sigint);

  CLI::App app{
      "decoherence and which-path complementarity simulator for a "
      "charged/massive superposition probed at spacelike separation"};
  app.require_subcommand(1);

  CommonArgs report_args, sweep_args, audit_args, map_args;
  CLI::App* report = app.add_subcommand(
      "report", "single-run decoherence report with measurement audit");
  add_common(report, report_args);
  CLI::App* sweep =
      app.add_subcommand("sweep", "parameter sweep to CSV / JSON lines");
  add_common(sweep, sweep_args);
  CLI::App* audit = app.add_subcommand(
      "audit", "random Gaussian-measurement audit of the complementarity bound");
  add_common(audit, audit_args);
  CLI::App* regime_map = app.add_subcommand(
      "regime-map", "2-axis regime classification map");
  add_common(regime_map, map_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (report->parsed()) return run_report_cmd(report_args);
    if (sweep->parsed()) return run_sweep_cmd(sweep_args, false);
    if (audit->parsed()) return run_audit_cmd(audit_args);
    if (regime_map->parsed()) return run_sweep_cmd(map_args, true);
  } catch (const gedanken::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const gedanken::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const gedanken::ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << '\n';
    return 3;
  } catch (const gedanken::AuditViolation& e) {
    std::cerr << "audit violation: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
