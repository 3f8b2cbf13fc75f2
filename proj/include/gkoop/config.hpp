// Config ingestion: a strict key=value text format describing one system
// (chart, group, field, map, metric, sampling) plus run tolerances. Unknown
// keys are fatal so a typo cannot silently weaken a verification run.
//
// Schema (see README for the full reference):
//   id = torus-rotation
//   chart = torus:2 | real:1
//   chart.box = -1 1              # non-periodic sampling interval
//   group = u1 | torus:d | so3 | heisenberg
//   field = constant <v1..vn> | trigpoly
//   field.term = <comp> const <coef>          # repeatable, trigpoly only
//   field.term = <comp> sin|cos <coef> <k1..kn>
//   map_z = torus_identity | u1_winding <k..> | u1_sine |
//           so3_axis <w1 w2 w3> | so3_compose <a1..a3 b1..b3> |
//           heisenberg_line <c1 c2 c3>
//   metric = identity | diag <d1..dn>
//   omega_target = <d reals>      # optional: gauge for rescaling / residual
//   anchor = <n reals>            # optional: lift anchor
//   sampling.grid / sampling.random / sampling.seed
//   tol / collin_tol / zero_tol / fd_step / rk4_step / horizon
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gkoop/differential.hpp"
#include "gkoop/sampling.hpp"

namespace gkoop {

struct FieldSpec {
  std::string kind;             // "constant" | "trigpoly"
  std::vector<double> params;   // constant components
  std::vector<TrigTerm> terms;  // trigpoly table
};

struct MapSpec {
  std::string name;
  std::vector<double> params;
};

struct MetricSpec {
  std::string kind = "identity";  // "identity" | "diag"
  std::vector<double> diag;
};

struct SystemDefinition {
  std::string id;
  std::string chart_kind;  // "torus" | "real"
  int chart_dim = 0;
  std::string group_name;
  FieldSpec field;
  MapSpec map_z;
  MetricSpec metric;
  std::optional<RVec> omega_target;
  std::optional<RVec> anchor;
  SamplingSpec sampling;
};

struct RunConfig {
  double tol = 1e-6;
  double collin_tol = 1e-6;
  double zero_tol = 1e-8;
  double fd_step = kDefaultFdStep;
  double rk4_step = kDefaultRk4Step;
  double horizon = 10.0;  // semiconjugacy time range [0, T]
  std::string out_json;
  std::string out_csv;
};

std::pair<SystemDefinition, RunConfig> parse_config_text(
    const std::string& text, const std::string& origin = "<string>");
std::pair<SystemDefinition, RunConfig> load_config(const std::string& path);

// The runtime objects a command operates on.
struct BuiltSystem {
  SystemDefinition def;
  ChartModel chart;
  GroupSpecPtr group;
  VectorField field;
  GroupValuedMap map;
  RiemannianMetric metric;
  std::vector<RVec> samples;
  RVec anchor;  // defaults to the chart origin / box centre

  // Non-vanishing field and group-membership of z, checked over the sample
  // set (global statements are not checkable from black-box evaluators).
  void validate_on_samples() const;
};

BuiltSystem build_system(const SystemDefinition& def);

}  // namespace gkoop
