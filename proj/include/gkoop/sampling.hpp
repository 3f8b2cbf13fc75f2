// Deterministic sample-set construction: a coordinate grid (total size
// capped) plus seeded uniform-random points. Identical spec -> identical
// samples, bit for bit.
#pragma once

#include <cstdint>
#include <vector>

#include "gkoop/chart.hpp"

namespace gkoop {

struct SamplingSpec {
  int grid_res = 16;      // per-dimension resolution before capping
  int n_random = 256;
  std::uint64_t seed = 0;
  double box_lo = -1.0;   // sampling interval for non-periodic coordinates
  double box_hi = 1.0;
  int cap = 4096;         // grid total is capped by lowering the resolution
};

std::vector<RVec> make_samples(const ChartModel& chart, const SamplingSpec& s);

// Fixed direction set on the unit sphere: signs in 1-d, equispaced angles
// in 2-d, a seeded draw otherwise. Same n and count -> same directions.
std::vector<RVec> deterministic_directions(int n, int count);

}  // namespace gkoop
