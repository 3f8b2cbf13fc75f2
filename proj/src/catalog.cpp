#include "gkoop/catalog.hpp"

#include "gkoop/common.hpp"

namespace gkoop {

namespace {

// 1.4142135623730951 = sqrt(2), 2.8284271247461903 = 2*sqrt(2).

const char* kTorusRotation = R"(# quasiperiodic rotation on T^2: z identity, V = (1, sqrt2)
id = torus-rotation
chart = torus:2
group = torus:2
field = constant 1 1.4142135623730951
map_z = torus_identity
omega_target = 1 1.4142135623730951
sampling.grid = 64
sampling.random = 256
sampling.seed = 20260810
)";

const char* kTorusRescaled = R"(# rotation orbits at variable speed: V = (2 + sin theta0) * (1, sqrt2)
id = torus-rescaled
chart = torus:2
group = torus:2
field = trigpoly
field.term = 0 const 2
field.term = 0 sin 1 1 0
field.term = 1 const 2.8284271247461903
field.term = 1 sin 1.4142135623730951 1 0
map_z = torus_identity
omega_target = 1 1.4142135623730951
sampling.grid = 32
sampling.random = 128
sampling.seed = 20260810
)";

const char* kU1Sine = R"(# z = e^{i sin theta0} on T^2: not an eigenfunction, dz(V) vanishes on a circle
id = u1-sine
chart = torus:2
group = u1
field = constant 1 1.4142135623730951
map_z = u1_sine
sampling.grid = 64
sampling.random = 256
sampling.seed = 20260810
)";

const char* kSo3Circle = R"(# one-parameter subgroup z(s) = exp(s E3) driven at unit speed
id = so3-circle
chart = real:1
chart.box = -1 1
group = so3
field = constant 1
map_z = so3_axis 0 0 1
omega_target = 0 0 1
sampling.grid = 64
sampling.random = 64
sampling.seed = 20260810
)";

const char* kSo3Wobble = R"(# noncommuting values z(s) = exp(s E3) exp(0.8 s E1): lift gap probe
id = so3-wobble
chart = real:1
chart.box = -0.8 0.8
group = so3
field = constant 1
map_z = so3_compose 0 0 1 0.8 0 0
anchor = 0
sampling.grid = 32
sampling.random = 32
sampling.seed = 20260810
)";

const char* kHeisenbergLine = R"(# nilpotent group, globally bijective exp: z(t) = exp(t (1,1,0.5))
id = heisenberg-line
chart = real:1
chart.box = -1 1
group = heisenberg
field = constant 1
map_z = heisenberg_line 1 1 0.5
omega_target = 1 1 0.5
sampling.grid = 32
sampling.random = 32
sampling.seed = 20260810
)";

const char* kNoncollinear = R"(# V = (1, cos theta0): dz(V) sweeps a 2-dimensional set, no rescaling exists
id = noncollinear
chart = torus:2
group = torus:2
field = trigpoly
field.term = 0 const 1
field.term = 1 cos 1 1 0
map_z = torus_identity
sampling.grid = 32
sampling.random = 64
sampling.seed = 20260810
)";

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"torus-rotation",
       kTorusRotation,
       {{"verify", true}, {"residual", true}, {"lift-check", true}}},
      {"torus-rescaled", kTorusRescaled, {{"verify", false}, {"rescale", true}}},
      {"u1-sine",
       kU1Sine,
       {{"verify", false}, {"rescale", false}, {"lift-check", true}}},
      {"so3-circle",
       kSo3Circle,
       {{"verify", true}, {"residual", true}, {"lift-check", true}}},
      {"so3-wobble", kSo3Wobble, {{"lift-check", true}}},
      {"heisenberg-line",
       kHeisenbergLine,
       {{"verify", true}, {"lift-check", true}}},
      {"noncollinear", kNoncollinear, {{"rescale", false}}},
  };
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& entry : catalog())
    if (entry.name == name) return entry;
  throw ConfigError("unknown catalog system '" + name + "'");
}

}  // namespace gkoop
