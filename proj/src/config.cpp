#include "gkoop/config.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <sstream>

namespace gkoop {

namespace {

struct Line {
  int number;
  std::string key;
  std::vector<std::string> tokens;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const Line& ln, const std::string& origin,
                    const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    fail(origin, ln.number, "field '" + ln.key + "': bad number '" + tok + "'");
  }
  if (used != tok.size() || !std::isfinite(v))
    fail(origin, ln.number, "field '" + ln.key + "': bad number '" + tok + "'");
  return v;
}

long long parse_int(const Line& ln, const std::string& origin,
                    const std::string& tok) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    fail(origin, ln.number, "field '" + ln.key + "': bad integer '" + tok + "'");
  }
  if (used != tok.size())
    fail(origin, ln.number, "field '" + ln.key + "': bad integer '" + tok + "'");
  return v;
}

std::vector<double> parse_doubles(const Line& ln, const std::string& origin,
                                  std::size_t from = 0) {
  std::vector<double> out;
  for (std::size_t i = from; i < ln.tokens.size(); ++i)
    out.push_back(parse_double(ln, origin, ln.tokens[i]));
  return out;
}

const std::map<std::string, int>& known_keys() {
  static const std::map<std::string, int> keys = {
      {"id", 1},         {"chart", 1},          {"chart.box", 1},
      {"group", 1},      {"field", 1},          {"field.term", 0},
      {"map_z", 1},      {"metric", 1},         {"omega_target", 1},
      {"anchor", 1},     {"sampling.grid", 1},  {"sampling.random", 1},
      {"sampling.seed", 1}, {"tol", 1},         {"collin_tol", 1},
      {"zero_tol", 1},   {"fd_step", 1},        {"rk4_step", 1},
      {"horizon", 1}};  // value 1 = at most once, 0 = repeatable
  return keys;
}

}  // namespace

std::pair<SystemDefinition, RunConfig> parse_config_text(
    const std::string& text, const std::string& origin) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, raw)) {
      ++number;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      raw = trim(raw);
      if (raw.empty()) continue;
      const auto eq = raw.find('=');
      if (eq == std::string::npos)
        fail(origin, number, "expected 'key = value'");
      Line ln{number, trim(raw.substr(0, eq)), split(trim(raw.substr(eq + 1)))};
      if (ln.key.empty()) fail(origin, number, "missing key");
      const auto it = known_keys().find(ln.key);
      if (it == known_keys().end())
        fail(origin, number, "unknown key '" + ln.key + "'");
      if (it->second == 1 && ++seen[ln.key] > 1)
        fail(origin, number, "duplicate key '" + ln.key + "'");
      if (ln.tokens.empty()) fail(origin, number, "field '" + ln.key + "': empty value");
      lines.push_back(std::move(ln));
    }
  }
  if (lines.empty()) throw ConfigError(origin + ": empty config");

  SystemDefinition def;
  RunConfig run;
  bool have_chart = false, have_group = false, have_field = false,
       have_map = false;

  for (const Line& ln : lines) {
    if (ln.key == "id") {
      def.id = ln.tokens[0];
    } else if (ln.key == "chart") {
      const std::string& v = ln.tokens[0];
      const auto colon = v.find(':');
      if (colon == std::string::npos)
        fail(origin, ln.number, "field 'chart': expected torus:n or real:n");
      def.chart_kind = v.substr(0, colon);
      if (def.chart_kind != "torus" && def.chart_kind != "real")
        fail(origin, ln.number, "field 'chart': unknown kind '" + def.chart_kind + "'");
      def.chart_dim = static_cast<int>(parse_int(ln, origin, v.substr(colon + 1)));
      if (def.chart_dim < 1)
        fail(origin, ln.number, "field 'chart': dimension must be >= 1");
      have_chart = true;
    } else if (ln.key == "chart.box") {
      if (ln.tokens.size() != 2)
        fail(origin, ln.number, "field 'chart.box': expected 'lo hi'");
      def.sampling.box_lo = parse_double(ln, origin, ln.tokens[0]);
      def.sampling.box_hi = parse_double(ln, origin, ln.tokens[1]);
      if (!(def.sampling.box_lo < def.sampling.box_hi))
        fail(origin, ln.number, "field 'chart.box': lo must be < hi");
    } else if (ln.key == "group") {
      def.group_name = ln.tokens[0];
      try {
        make_group(def.group_name);
      } catch (const ConfigError& err) {
        fail(origin, ln.number, err.what());
      }
      have_group = true;
    } else if (ln.key == "field") {
      def.field.kind = ln.tokens[0];
      if (def.field.kind == "constant") {
        def.field.params = parse_doubles(ln, origin, 1);
        if (def.field.params.empty())
          fail(origin, ln.number, "field 'field': constant needs components");
      } else if (def.field.kind == "trigpoly") {
        if (ln.tokens.size() != 1)
          fail(origin, ln.number, "field 'field': trigpoly takes no inline parameters");
      } else {
        fail(origin, ln.number, "field 'field': unknown kind '" + def.field.kind + "'");
      }
      have_field = true;
    } else if (ln.key == "field.term") {
      if (ln.tokens.size() < 3)
        fail(origin, ln.number, "field 'field.term': expected '<comp> <kind> <coef> [k..]'");
      TrigTerm term;
      term.comp = static_cast<int>(parse_int(ln, origin, ln.tokens[0]));
      const std::string& kind = ln.tokens[1];
      term.coef = parse_double(ln, origin, ln.tokens[2]);
      if (kind == "const") {
        term.kind = TrigTerm::Kind::Const;
        if (ln.tokens.size() != 3)
          fail(origin, ln.number, "field 'field.term': const takes one coefficient");
      } else if (kind == "sin" || kind == "cos") {
        term.kind = kind == "sin" ? TrigTerm::Kind::Sin : TrigTerm::Kind::Cos;
        term.wave.resize(ln.tokens.size() - 3);
        for (std::size_t i = 3; i < ln.tokens.size(); ++i)
          term.wave[i - 3] = static_cast<int>(parse_int(ln, origin, ln.tokens[i]));
      } else {
        fail(origin, ln.number, "field 'field.term': unknown kind '" + kind + "'");
      }
      def.field.terms.push_back(std::move(term));
    } else if (ln.key == "map_z") {
      def.map_z.name = ln.tokens[0];
      for (std::size_t i = 1; i < ln.tokens.size(); ++i)
        def.map_z.params.push_back(parse_double(ln, origin, ln.tokens[i]));
      have_map = true;
    } else if (ln.key == "metric") {
      def.metric.kind = ln.tokens[0];
      if (def.metric.kind == "diag") {
        def.metric.diag = parse_doubles(ln, origin, 1);
        if (def.metric.diag.empty())
          fail(origin, ln.number, "field 'metric': diag needs entries");
      } else if (def.metric.kind != "identity") {
        fail(origin, ln.number, "field 'metric': unknown kind '" + def.metric.kind + "'");
      }
    } else if (ln.key == "omega_target") {
      const auto vals = parse_doubles(ln, origin);
      def.omega_target = Eigen::Map<const RVec>(vals.data(), vals.size());
    } else if (ln.key == "anchor") {
      const auto vals = parse_doubles(ln, origin);
      def.anchor = Eigen::Map<const RVec>(vals.data(), vals.size());
    } else if (ln.key == "sampling.grid") {
      def.sampling.grid_res = static_cast<int>(parse_int(ln, origin, ln.tokens[0]));
    } else if (ln.key == "sampling.random") {
      def.sampling.n_random = static_cast<int>(parse_int(ln, origin, ln.tokens[0]));
    } else if (ln.key == "sampling.seed") {
      def.sampling.seed = static_cast<std::uint64_t>(parse_int(ln, origin, ln.tokens[0]));
    } else {
      double* slot = ln.key == "tol"          ? &run.tol
                     : ln.key == "collin_tol" ? &run.collin_tol
                     : ln.key == "zero_tol"   ? &run.zero_tol
                     : ln.key == "fd_step"    ? &run.fd_step
                     : ln.key == "rk4_step"   ? &run.rk4_step
                                              : &run.horizon;
      *slot = parse_double(ln, origin, ln.tokens[0]);
      if (ln.key != "horizon" && !(*slot > 0.0))
        fail(origin, ln.number, "field '" + ln.key + "': must be positive");
    }
  }

  if (!have_chart) throw ConfigError(origin + ": missing field 'chart'");
  if (!have_group) throw ConfigError(origin + ": missing field 'group'");
  if (!have_field) throw ConfigError(origin + ": missing field 'field'");
  if (!have_map) throw ConfigError(origin + ": missing field 'map_z'");
  if (def.id.empty()) throw ConfigError(origin + ": missing field 'id'");
  if (!def.field.terms.empty() && def.field.kind != "trigpoly")
    throw ConfigError(origin + ": field.term given but field is not trigpoly");
  if (def.field.kind == "trigpoly" && def.field.terms.empty())
    throw ConfigError(origin + ": trigpoly field has no field.term rows");
  return {std::move(def), run};
}

std::pair<SystemDefinition, RunConfig> load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

namespace {

GroupValuedMap build_map(const SystemDefinition& def, const ChartModel& chart,
                         const GroupSpecPtr& group) {
  const MapSpec& ms = def.map_z;
  const int n = chart.dim();
  const int d = group->dim();
  auto need_group = [&](const std::string& name) {
    if (def.group_name.rfind(name, 0) != 0)
      throw ConfigError("map_z: '" + ms.name + "' requires group '" + name +
                        "', got '" + def.group_name + "'");
  };
  auto need_params = [&](std::size_t count) {
    if (ms.params.size() != count)
      throw ConfigError("map_z: '" + ms.name + "' expects " +
                        std::to_string(count) + " parameters");
  };

  if (ms.name == "torus_identity") {
    need_group("torus");
    need_params(0);
    if (n != d)
      throw ConfigError("map_z: torus_identity needs chart dim = group dim");
    if (!chart.any_periodic())
      throw ConfigError("map_z: torus_identity needs a torus chart");
    return GroupValuedMap{[n](const RVec& th) {
                            Mat g = Mat::Zero(n, n);
                            for (int k = 0; k < n; ++k)
                              g(k, k) = std::polar(1.0, th[k]);
                            return g;
                          },
                          group, chart};
  }
  if (ms.name == "u1_winding") {
    need_group("u1");
    need_params(static_cast<std::size_t>(n));
    RVec k(n);
    for (int i = 0; i < n; ++i) {
      if (ms.params[i] != std::floor(ms.params[i]))
        throw ConfigError("map_z: u1_winding numbers must be integers");
      k[i] = ms.params[i];
    }
    return GroupValuedMap{[k](const RVec& th) {
                            Mat g(1, 1);
                            g(0, 0) = std::polar(1.0, k.dot(th));
                            return g;
                          },
                          group, chart};
  }
  if (ms.name == "u1_sine") {
    need_group("u1");
    need_params(0);
    return GroupValuedMap{[](const RVec& th) {
                            Mat g(1, 1);
                            g(0, 0) = std::polar(1.0, std::sin(th[0]));
                            return g;
                          },
                          group, chart};
  }
  if (ms.name == "so3_axis") {
    need_group("so3");
    need_params(3);
    const Mat gen = group->from_coords(
        RVec{{ms.params[0], ms.params[1], ms.params[2]}});
    return GroupValuedMap{
        [group, gen](const RVec& s) { return group->exp(Mat(s[0] * gen)); },
        group, chart};
  }
  if (ms.name == "so3_compose") {
    need_group("so3");
    need_params(6);
    const Mat ga = group->from_coords(
        RVec{{ms.params[0], ms.params[1], ms.params[2]}});
    const Mat gb = group->from_coords(
        RVec{{ms.params[3], ms.params[4], ms.params[5]}});
    return GroupValuedMap{[group, ga, gb](const RVec& s) {
                            return Mat(group->exp(Mat(s[0] * ga)) *
                                       group->exp(Mat(s[0] * gb)));
                          },
                          group, chart};
  }
  if (ms.name == "heisenberg_line") {
    need_group("heisenberg");
    need_params(3);
    const Mat gen = group->from_coords(
        RVec{{ms.params[0], ms.params[1], ms.params[2]}});
    return GroupValuedMap{
        [group, gen](const RVec& t) { return group->exp(Mat(t[0] * gen)); },
        group, chart};
  }
  throw ConfigError("map_z: unknown builtin '" + ms.name + "'");
}

}  // namespace

void BuiltSystem::validate_on_samples() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const RVec vx = field(samples[i]);
    if (!(vx.norm() > 0.0))
      throw Error("field vanishes at sample " + std::to_string(i) +
                  "; the flow assumption needs a non-vanishing field");
    const double viol = group->constraint_violation(map(samples[i]));
    if (viol > 1e-10)
      throw Error("map_z leaves the group at sample " + std::to_string(i) +
                  " (violation " + std::to_string(viol) + ")");
  }
}

BuiltSystem build_system(const SystemDefinition& def) {
  BuiltSystem sys;
  sys.def = def;
  sys.chart = def.chart_kind == "torus" ? ChartModel::torus(def.chart_dim)
                                        : ChartModel::real(def.chart_dim);
  sys.group = make_group(def.group_name);

  if (def.field.kind == "constant") {
    if (static_cast<int>(def.field.params.size()) != def.chart_dim)
      throw ConfigError("field: constant arity does not match chart dimension");
    RVec v(def.chart_dim);
    for (int i = 0; i < def.chart_dim; ++i) v[i] = def.field.params[i];
    sys.field = make_constant_field(std::move(v));
  } else {
    sys.field = make_trigpoly_field(def.chart_dim, def.field.terms);
  }

  sys.map = build_map(def, sys.chart, sys.group);

  if (def.metric.kind == "identity") {
    sys.metric = RiemannianMetric::identity(def.chart_dim);
  } else {
    if (static_cast<int>(def.metric.diag.size()) != def.chart_dim)
      throw ConfigError("metric: diag arity does not match chart dimension");
    RMat g = RMat::Zero(def.chart_dim, def.chart_dim);
    for (int i = 0; i < def.chart_dim; ++i) g(i, i) = def.metric.diag[i];
    sys.metric = RiemannianMetric::constant(std::move(g));
  }

  if (def.omega_target &&
      def.omega_target->size() != sys.group->dim())
    throw ConfigError("omega_target: arity does not match the group dimension");
  if (def.anchor && def.anchor->size() != def.chart_dim)
    throw ConfigError("anchor: arity does not match the chart dimension");

  sys.anchor = def.anchor ? *def.anchor : [&def] {
    RVec a = RVec::Zero(def.chart_dim);
    if (def.chart_kind == "real")
      a.setConstant(0.5 * (def.sampling.box_lo + def.sampling.box_hi));
    return a;
  }();

  sys.samples = make_samples(sys.chart, def.sampling);
  if (sys.samples.empty()) throw ConfigError("sampling: empty sample set");
  return sys;
}

}  // namespace gkoop
