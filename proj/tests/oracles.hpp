// Test-only independent routes and deterministic random generators. Nothing
// here is used by the library; each oracle recomputes its quantity from a
// different formula than the implementation path it checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gkoop/common.hpp"

namespace gkoop::test {

// Plain truncated power series for the matrix exponential (no scaling, no
// squaring); adequate for small arguments.
inline Mat series_exp(const Mat& a, int terms = 20) {
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= terms; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

// Left-trivialized differential of exp as the ad series:
//   exp(u)^{-1} d/dt exp(u + t w)|_0 = sum_k (-ad_u)^k w / (k+1)!
inline Mat dexp_series(const Mat& u, const Mat& w, int terms = 20) {
  Mat cur = w;
  Mat sum = w;
  for (int k = 1; k <= terms; ++k) {
    cur = -(u * cur - cur * u) / static_cast<double>(k + 1);
    sum += cur;
  }
  return sum;
}

// Deterministic generator for property-style tests. All draws go through
// explicit bit mappings so runs are reproducible bit-for-bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  RVec vec(int n, double lo, double hi) {
    RVec v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  // Uniform in the Euclidean ball of the given radius.
  RVec ball(int n, double radius) {
    for (;;) {
      RVec v = vec(n, -1.0, 1.0);
      if (v.squaredNorm() <= 1.0) return radius * v;
    }
  }

  RVec unit(int n) {
    for (;;) {
      RVec v = ball(n, 1.0);
      const double s = v.norm();
      if (s > 1e-3) return v / s;
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gkoop::test
