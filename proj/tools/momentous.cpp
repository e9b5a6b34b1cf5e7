// momentous: run trajectories and sweeps, print reproduction reports, and
// run the self-check suites.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "momentous/output.hpp"
#include "momentous/report.hpp"
#include "momentous/selfcheck.hpp"

namespace fs = std::filesystem;
using namespace momentous;

namespace {

struct Common {
  std::optional<std::string> config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_path, "JSON config file (or a previous summary)");
  cmd->add_option("-s,--set", c.overrides, "override a key: --set gamma=-1.9")->take_all();
  cmd->add_option("-o,--output-dir", c.output_dir, "output directory");
}

std::string out_path(const RunConfig& cfg, const Common& c, const std::string& file) {
  const std::string dir = c.output_dir.empty() ? cfg.output_dir() : c.output_dir;
  return (fs::path(dir) / file).string();
}

int cmd_run(const Common& c) {
  const RunConfig cfg = resolve_config(c.config_path, c.overrides);
  const std::string prefix = cfg.output_prefix();

  if (const auto spec = cfg.sweep()) {
    const auto result = run_sweep(*spec);
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
      const auto& run = result.runs[i];
      if (!run.ok()) {
        std::cerr << "point " << run.value << ": " << run.error << '\n';
        continue;
      }
      std::ostringstream csv;
      write_trajectory_csv(csv, run.semiclassical, cfg);
      write_file(out_path(cfg, c, prefix + "_" + std::to_string(i) + ".csv"), csv.str());
      if (run.classical) {
        std::ostringstream ccsv;
        write_trajectory_csv(ccsv, *run.classical, cfg);
        write_file(out_path(cfg, c, prefix + "_" + std::to_string(i) + "_classical.csv"), ccsv.str());
      }
    }
    const auto summary = ensemble_summary(result, cfg);
    const std::string path = out_path(cfg, c, prefix + "_ensemble.json");
    write_file(path, summary.dump(2) + "\n");
    std::cout << "sweep over " << result.parameter << ": " << result.runs.size()
              << " points, summary " << path << '\n';
    return 0;
  }

  const auto kind = cfg.kind();
  const auto params = cfg.params();
  const auto state0 = make_initial_state(kind.mode(), cfg.initial(), params);
  const auto traj = integrate(kind, state0, params, cfg.integrator());

  std::ostringstream csv;
  write_trajectory_csv(csv, traj, cfg);
  const std::string csv_path = out_path(cfg, c, prefix + ".csv");
  const std::string json_path = out_path(cfg, c, prefix + ".json");
  write_file(csv_path, csv.str());
  write_file(json_path, trajectory_summary(traj, cfg).dump(2) + "\n");
  std::cout << to_string(traj.status.tag) << " at t=" << traj.status.time << ", "
            << traj.samples.size() << " samples -> " << csv_path << '\n';
  if (!traj.status.detail.empty()) std::cout << traj.status.detail << '\n';
  return exit_code(traj.status.tag);
}

int cmd_report(const std::string& which, const Common& c) {
  const ReportKind kind = report_kind_from_string(which);
  RunConfig cfg = merge_config(default_config(), report_preset(kind));
  if (c.config_path) cfg = merge_config(cfg, read_config_file(*c.config_path));
  for (const auto& o : c.overrides) cfg = merge_config(cfg, parse_override(o));
  const Report report = make_report(kind, cfg);
  std::cout << format_report(report);
  const std::string path = out_path(cfg, c, "report_" + which + ".json");
  write_file(path, report_json(report, cfg).dump(2) + "\n");
  std::cout << "json: " << path << '\n';
  return 0;
}

int cmd_validate(const std::vector<std::string>& suites, const std::string& flip) {
  SelfCheckOptions opt;
  opt.suites = suites;
  if (!flip.empty()) {
    const auto comma = flip.find(',');
    if (comma == std::string::npos) throw ConfigError("--flip-bracket expects I,J");
    opt.flip_bracket = {std::stoul(flip.substr(0, comma)), std::stoul(flip.substr(comma + 1))};
  }
  bool ok = true;
  for (const auto& suite : run_selfcheck(opt)) {
    std::cout << "[" << (suite.pass() ? "PASS" : "FAIL") << "] " << suite.suite << '\n';
    for (const auto& ch : suite.checks)
      std::cout << "    " << (ch.pass ? "ok  " : "FAIL") << "  " << ch.name << "  (" << ch.detail
                << ")\n";
    ok = ok && suite.pass();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiclassical moment dynamics on the circle and the sphere"};
  app.require_subcommand(1);

  Common run_opts;
  auto* run = app.add_subcommand("run", "integrate one trajectory or a configured sweep");
  add_common(run, run_opts);

  Common report_opts;
  std::string which;
  auto* report = app.add_subcommand("report", "compare against the reference tables");
  report->add_option("which", which, "table1 | table2 | makarov_metrics")->required();
  add_common(report, report_opts);

  std::vector<std::string> suites;
  std::string flip;
  auto* validate = app.add_subcommand("validate", "run the self-check suites");
  validate->add_option("--suite", suites, "oracle | conservation | uncertainty | convergence");
  validate->add_option("--flip-bracket", flip, "negate sphere bracket I,J (mutation check)");

  auto* schema = app.add_subcommand("schema", "list config keys and types");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*report) return cmd_report(which, report_opts);
    if (*validate) return cmd_validate(suites, flip);
    if (*schema) {
      for (const auto& [key, type] : config_schema()) std::cout << key << "  " << type << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
