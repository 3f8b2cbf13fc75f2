// gkoop — verify Lie-group-valued Koopman eigenfunction candidates of smooth
// flows: frequency estimation, semiconjugacy residuals, vector-field
// rescaling tests, and local-lift differential checks, over the built-in
// system catalog or a user config.
#include <CLI11.hpp>
#include <cstdio>
#include <optional>

#include "gkoop/catalog.hpp"
#include "gkoop/runner.hpp"

namespace {

struct CliOptions {
  std::string system;
  std::string config;
  std::string out;
  std::string csv;
  std::optional<double> tol, fd_step, rk4_step;
  std::optional<std::uint64_t> seed;
};

void add_common_flags(CLI::App* cmd, CliOptions* opts, bool wants_system) {
  if (wants_system) {
    cmd->add_option("--system", opts->system,
                    "built-in catalog system name (see `gkoop list`)");
    cmd->add_option("--config", opts->config, "path to a system config file");
  }
  cmd->add_option("--tol", opts->tol, "pass/fail tolerance override");
  cmd->add_option("--fd-step", opts->fd_step,
                  "finite-difference step override");
  cmd->add_option("--rk4-step", opts->rk4_step, "RK4 integrator step override");
  cmd->add_option("--seed", opts->seed, "sampling seed override");
  cmd->add_option("--out", opts->out, "write the JSON report here");
  cmd->add_option("--csv", opts->csv, "write the per-sample CSV here");
}

gkoop::Overrides to_overrides(const CliOptions& opts) {
  gkoop::Overrides o;
  o.tol = opts.tol;
  o.fd_step = opts.fd_step;
  o.rk4_step = opts.rk4_step;
  o.seed = opts.seed;
  return o;
}

int run_single(const std::string& command, const CliOptions& opts) {
  if (opts.system.empty() == opts.config.empty()) {
    std::fprintf(stderr, "%s: give exactly one of --system or --config\n",
                 command.c_str());
    return 1;
  }
  auto [def, run] =
      opts.config.empty()
          ? gkoop::parse_config_text(
                gkoop::catalog_entry(opts.system).config_text, opts.system)
          : gkoop::load_config(opts.config);
  to_overrides(opts).apply(def, run);
  run.out_json = opts.out;
  run.out_csv = opts.csv;

  const gkoop::BuiltSystem sys = gkoop::build_system(def);
  const gkoop::RunResult result = gkoop::run_command(command, sys, run);
  gkoop::write_report_files(result, run);
  std::printf("[%s] %s %s\n", result.pass ? "PASS" : "FAIL", command.c_str(),
              def.id.c_str());
  return result.pass ? 0 : 2;
}

int run_suite_cmd(const CliOptions& opts) {
  gkoop::RunConfig run;
  run.out_json = opts.out;
  run.out_csv = opts.csv;
  const gkoop::RunResult result = gkoop::run_suite(to_overrides(opts));
  gkoop::write_report_files(result, run);
  for (const auto& check : result.report.at("checks")) {
    std::printf("[%s] %s %s (expected %s, got %s)\n",
                check.at("ok").get<bool>() ? "PASS" : "FAIL",
                check.at("command").get<std::string>().c_str(),
                check.at("system").get<std::string>().c_str(),
                check.at("expected_pass").get<bool>() ? "pass" : "fail",
                check.at("pass").get<bool>() ? "pass" : "fail");
  }
  std::printf("suite: %s\n", result.pass ? "all checks ok" : "FAILURES");
  return result.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-group-valued Koopman eigenfunction verification"};
  app.require_subcommand(1);

  CliOptions opts;
  const char* single_commands[] = {"verify", "rescale", "lift-check",
                                   "residual"};
  const char* descriptions[] = {
      "test whether dz(V) is constant (eigenfunction check)",
      "test whether some rescaling alpha*V makes z an eigenfunction",
      "compare dz with the local-lift differentials",
      "semiconjugacy residual against a given omega_target"};
  for (int i = 0; i < 4; ++i)
    add_common_flags(app.add_subcommand(single_commands[i], descriptions[i]),
                     &opts, true);
  add_common_flags(
      app.add_subcommand("suite",
                         "run every catalog system against its expectations"),
      &opts, false);
  app.add_subcommand("list", "list the built-in catalog systems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // errors exit 1; --help stays 0
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    if (sub->get_name() == "list") {
      for (const auto& entry : gkoop::catalog())
        std::printf("%s\n", entry.name.c_str());
      return 0;
    }
    if (sub->get_name() == "suite") return run_suite_cmd(opts);
    return run_single(sub->get_name(), opts);
  } catch (const gkoop::ConfigError& err) {
    std::fprintf(stderr, "config error: %s\n", err.what());
    return 1;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
