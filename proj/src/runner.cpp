#include "gkoop/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "gkoop/catalog.hpp"
#include "gkoop/koopman.hpp"
#include "gkoop/lift.hpp"

namespace gkoop {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json vec_to_json(const RVec& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json base_report(const std::string& command, const BuiltSystem& sys,
                 const RunConfig& cfg) {
  json j;
  j["command"] = command;
  j["system"] = sys.def.id;
  j["group"] = sys.group->name();
  j["basis"] = sys.group->basis_name();
  j["samples_used"] = sys.samples.size();
  j["tolerances"] = {{"tol", cfg.tol},           {"collin_tol", cfg.collin_tol},
                     {"zero_tol", cfg.zero_tol}, {"fd_step", cfg.fd_step},
                     {"rk4_step", cfg.rk4_step}, {"horizon", cfg.horizon}};
  j["timestamp"] = utc_timestamp();
  return j;
}

std::string csv_header(const BuiltSystem& sys, const std::string& tail) {
  std::ostringstream out;
  for (int i = 0; i < sys.chart.dim(); ++i) out << sys.chart.names()[i] << ",";
  for (int i = 0; i < sys.group->dim(); ++i) out << "dzv" << i << ",";
  out << tail << "\n";
  return out.str();
}

void csv_row_prefix(std::ostringstream& out, const RVec& x, const RVec& row) {
  for (int i = 0; i < x.size(); ++i) out << fmt(x[i]) << ",";
  for (int i = 0; i < row.size(); ++i) out << fmt(row[i]) << ",";
}

RunResult run_verify(const BuiltSystem& sys, const RunConfig& cfg) {
  const auto rows = dz_along_field(sys.map, sys.field, sys.samples, cfg.fd_step);
  auto report =
      verify_eigenfunction(sys.map, sys.field, sys.samples, cfg.tol, cfg.fd_step);
  const auto omega = AlgebraElement::from_coords(sys.group, report.omega_hat);
  report.semiconjugacy_residual = semiconjugacy_residual(
      sys.map, sys.field, omega, sys.samples.front(), cfg.horizon, cfg.rk4_step);

  RunResult result;
  result.pass = report.is_eigenfunction;
  json& j = result.report = base_report("verify", sys, cfg);
  j["omega_hat"] = vec_to_json(report.omega_hat);
  j["max_deviation"] = report.max_deviation;
  j["residual"] = report.semiconjugacy_residual;
  j["is_eigenfunction"] = report.is_eigenfunction;
  j["failing_samples"] = report.failing_samples;
  j["pass"] = result.pass;

  std::ostringstream csv;
  csv << csv_header(sys, "deviation");
  for (std::size_t i = 0; i < sys.samples.size(); ++i) {
    csv_row_prefix(csv, sys.samples[i], rows[i]);
    csv << fmt(report.deviations[i]) << "\n";
  }
  result.csv = csv.str();
  return result;
}

RunResult run_rescale(const BuiltSystem& sys, const RunConfig& cfg) {
  const auto rows = dz_along_field(sys.map, sys.field, sys.samples, cfg.fd_step);
  auto report = check_rescalable(sys.map, sys.field, sys.samples,
                                 cfg.collin_tol, cfg.zero_tol, cfg.fd_step);
  if (report.rescalable) {
    const RVec target =
        sys.def.omega_target ? *sys.def.omega_target : report.direction;
    report.alpha = compute_alpha(sys.map, sys.field, sys.samples, target,
                                 cfg.collin_tol, cfg.zero_tol, cfg.fd_step);
  }

  RunResult result;
  result.pass = report.rescalable;
  json& j = result.report = base_report("rescale", sys, cfg);
  j["rescalable"] = report.rescalable;
  j["direction"] = vec_to_json(report.direction);
  j["collinearity_ratio"] = report.collinearity_ratio;
  j["min_norm"] = report.min_norm;
  j["singular_values"] = vec_to_json(report.singular_values);
  j["alpha"] = report.alpha;
  j["pass"] = result.pass;

  std::ostringstream csv;
  csv << csv_header(sys, "deviation,alpha");
  for (std::size_t i = 0; i < sys.samples.size(); ++i) {
    csv_row_prefix(csv, sys.samples[i], rows[i]);
    // distance from the detected line L
    const double along = rows[i].dot(report.direction);
    csv << fmt((rows[i] - along * report.direction).norm()) << ",";
    if (i < report.alpha.size()) csv << fmt(report.alpha[i]);
    csv << "\n";
  }
  result.csv = csv.str();
  return result;
}

RunResult run_lift_check(const BuiltSystem& sys, const RunConfig& cfg) {
  const LocalLift lift = build_lift(sys.map, sys.anchor);
  const auto dirs = deterministic_directions(sys.chart.dim(), 32);

  RunResult result;
  std::ostringstream csv;
  for (int i = 0; i < sys.chart.dim(); ++i)
    csv << sys.chart.names()[i] << ",";
  for (int i = 0; i < sys.chart.dim(); ++i) csv << "dir" << i << ",";
  csv << "gap_tilde,gap_canonical\n";

  double max_tilde = 0.0, max_canon = 0.0;
  for (double f : {0.25, 0.5, 0.75}) {
    for (const RVec& dir : dirs) {
      const RVec p = sys.anchor + f * lift.domain_radius * dir;
      const RVec direct = dz(sys.map, p, dir, cfg.fd_step).coords;
      const double gap_tilde =
          (direct - tilde_d_theta(lift, p, dir, cfg.fd_step).coords).norm();
      const double gap_canon =
          (direct - d_theta_canonical(lift, p, dir, cfg.fd_step).coords).norm();
      max_tilde = std::max(max_tilde, gap_tilde);
      max_canon = std::max(max_canon, gap_canon);
      for (int k = 0; k < p.size(); ++k) csv << fmt(p[k]) << ",";
      for (int k = 0; k < dir.size(); ++k) csv << fmt(dir[k]) << ",";
      csv << fmt(gap_tilde) << "," << fmt(gap_canon) << "\n";
    }
  }

  // The trivialized route must match dz everywhere; the canonical route is
  // held to that only when the group is commutative.
  result.pass = max_tilde <= cfg.tol &&
                (!sys.group->abelian() || max_canon <= cfg.tol);
  json& j = result.report = base_report("lift-check", sys, cfg);
  j["max_gap_tilde"] = max_tilde;
  j["max_gap_canonical"] = max_canon;
  j["domain_radius"] = lift.domain_radius;
  j["anchor"] = vec_to_json(sys.anchor);
  j["abelian"] = sys.group->abelian();
  j["pass"] = result.pass;
  result.csv = csv.str();
  return result;
}

RunResult run_residual(const BuiltSystem& sys, const RunConfig& cfg) {
  if (!sys.def.omega_target)
    throw ConfigError("residual: config must provide omega_target");
  const auto omega = AlgebraElement::from_coords(sys.group, *sys.def.omega_target);
  const double residual = semiconjugacy_residual(
      sys.map, sys.field, omega, sys.samples.front(), cfg.horizon, cfg.rk4_step);

  const auto rows = dz_along_field(sys.map, sys.field, sys.samples, cfg.fd_step);

  RunResult result;
  result.pass = residual <= cfg.tol;
  json& j = result.report = base_report("residual", sys, cfg);
  j["residual"] = residual;
  j["omega"] = vec_to_json(*sys.def.omega_target);
  j["x0"] = vec_to_json(sys.samples.front());
  j["pass"] = result.pass;

  std::ostringstream csv;
  csv << csv_header(sys, "deviation");
  for (std::size_t i = 0; i < sys.samples.size(); ++i) {
    csv_row_prefix(csv, sys.samples[i], rows[i]);
    csv << fmt((rows[i] - *sys.def.omega_target).norm()) << "\n";
  }
  result.csv = csv.str();
  return result;
}

}  // namespace

void Overrides::apply(SystemDefinition& def, RunConfig& run) const {
  if (tol) run.tol = *tol;
  if (collin_tol) run.collin_tol = *collin_tol;
  if (zero_tol) run.zero_tol = *zero_tol;
  if (fd_step) run.fd_step = *fd_step;
  if (rk4_step) run.rk4_step = *rk4_step;
  if (horizon) run.horizon = *horizon;
  if (seed) def.sampling.seed = *seed;
}

RunResult run_command(const std::string& command, const BuiltSystem& sys,
                      const RunConfig& cfg) {
  sys.validate_on_samples();
  if (command == "verify") return run_verify(sys, cfg);
  if (command == "rescale") return run_rescale(sys, cfg);
  if (command == "lift-check") return run_lift_check(sys, cfg);
  if (command == "residual") return run_residual(sys, cfg);
  throw ConfigError("unknown command '" + command + "'");
}

RunResult run_suite(const Overrides& overrides) {
  RunResult result;
  result.pass = true;
  json checks = json::array();
  std::ostringstream csv;
  csv << "system,command,expected_pass,pass,ok\n";

  for (const CatalogEntry& entry : catalog()) {
    auto [def, run] = parse_config_text(entry.config_text, entry.name);
    overrides.apply(def, run);
    const BuiltSystem sys = build_system(def);
    for (const CheckSpec& check : entry.checks) {
      const RunResult one = run_command(check.command, sys, run);
      const bool ok = one.pass == check.expect_pass;
      result.pass = result.pass && ok;
      json item;
      item["system"] = entry.name;
      item["command"] = check.command;
      item["expected_pass"] = check.expect_pass;
      item["pass"] = one.pass;
      item["ok"] = ok;
      item["report"] = one.report;
      item["report"].erase("timestamp");
      checks.push_back(std::move(item));
      csv << entry.name << "," << check.command << ","
          << (check.expect_pass ? "true" : "false") << ","
          << (one.pass ? "true" : "false") << "," << (ok ? "true" : "false")
          << "\n";
    }
  }

  json& j = result.report;
  j["command"] = "suite";
  j["checks"] = std::move(checks);
  j["all_ok"] = result.pass;
  j["pass"] = result.pass;
  j["timestamp"] = utc_timestamp();
  result.csv = csv.str();
  return result;
}

void write_report_files(const RunResult& result, const RunConfig& cfg) {
  if (!cfg.out_json.empty()) {
    std::ofstream out(cfg.out_json, std::ios::binary);
    if (!out) throw Error("cannot write JSON report to '" + cfg.out_json + "'");
    out << result.report.dump(2) << "\n";
  }
  if (!cfg.out_csv.empty()) {
    std::ofstream out(cfg.out_csv, std::ios::binary);
    if (!out) throw Error("cannot write CSV to '" + cfg.out_csv + "'");
    out << result.csv;
  }
}

}  // namespace gkoop
