#include "gkoop/sampling.hpp"

#include <cmath>
#include <random>

namespace gkoop {

namespace {

// mt19937_64 with an explicit bit-to-double mapping; std::uniform_real_
// distribution is implementation-defined and would not be reproducible.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : eng_(seed) {}
  double next(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace

std::vector<RVec> make_samples(const ChartModel& chart, const SamplingSpec& s) {
  const int n = chart.dim();
  if (s.grid_res < 0 || s.n_random < 0)
    throw ConfigError("sampling: counts must be non-negative");
  if (!(s.box_lo < s.box_hi))
    throw ConfigError("sampling: box must satisfy lo < hi");

  int res = s.grid_res;
  while (res > 1 && std::pow(static_cast<double>(res), n) >
                        static_cast<double>(s.cap))
    --res;

  std::vector<RVec> samples;
  if (res > 0) {
    std::size_t total = 1;
    for (int k = 0; k < n; ++k) total *= static_cast<std::size_t>(res);
    samples.reserve(total + s.n_random);
    std::vector<int> idx(n, 0);
    for (std::size_t count = 0; count < total; ++count) {
      RVec x(n);
      for (int k = 0; k < n; ++k) {
        if (chart.is_periodic(k)) {
          x[k] = kTwoPi * idx[k] / res;
        } else {
          x[k] = res == 1 ? 0.5 * (s.box_lo + s.box_hi)
                          : s.box_lo + (s.box_hi - s.box_lo) * idx[k] / (res - 1);
        }
      }
      samples.push_back(std::move(x));
      for (int k = n - 1; k >= 0; --k) {  // last coordinate fastest
        if (++idx[k] < res) break;
        idx[k] = 0;
      }
    }
  }

  UniformRng rng(s.seed);
  for (int i = 0; i < s.n_random; ++i) {
    RVec x(n);
    for (int k = 0; k < n; ++k)
      x[k] = chart.is_periodic(k) ? rng.next(0.0, kTwoPi)
                                  : rng.next(s.box_lo, s.box_hi);
    samples.push_back(std::move(x));
  }
  return samples;
}

std::vector<RVec> deterministic_directions(int n, int count) {
  std::vector<RVec> dirs;
  dirs.reserve(count);
  if (n == 1) {
    for (int i = 0; i < count; ++i)
      dirs.push_back(RVec::Constant(1, i % 2 == 0 ? 1.0 : -1.0));
    return dirs;
  }
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = kTwoPi * i / count;
      dirs.push_back(RVec{{std::cos(a), std::sin(a)}});
    }
    return dirs;
  }
  UniformRng rng(0x5eed0fd1ce5ull);
  while (static_cast<int>(dirs.size()) < count) {
    RVec v(n);
    for (int k = 0; k < n; ++k) v[k] = rng.next(-1.0, 1.0);
    const double s = v.norm();
    if (s > 1e-3 && v.squaredNorm() <= 1.0) dirs.push_back(v / s);
  }
  return dirs;
}

}  // namespace gkoop
