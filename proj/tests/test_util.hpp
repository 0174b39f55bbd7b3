#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "sieig/linalg.hpp"

namespace test_util {

// Test-instance generation only; independent of the library's seeded stream.
inline std::mt19937& rng() {
  static std::mt19937 gen(12345);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

inline int uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng());
}

inline sieig::Vec random_vec(std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(-scale, scale);
  return sieig::Vec(std::move(v));
}

inline sieig::DenseSymMatrix random_sym(std::size_t n, double scale = 1.0) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      e[i * n + j] = e[j * n + i] = uniform(-scale, scale);
  return sieig::DenseSymMatrix(n, std::move(e));
}

// Strictly increasing spectrum, ascending.
inline std::vector<double> random_spectrum(std::size_t n, double lo = -5.0,
                                           double step_hi = 2.0) {
  std::vector<double> s(n);
  double v = lo + uniform(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    v += uniform(0.01, step_hi);
    s[j] = v;
  }
  return s;
}

inline double max_abs_diff(const sieig::Vec& a, const sieig::Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

// Max deviation of the Gram matrix from the identity.
inline double orthonormality_defect(const std::vector<sieig::Vec>& cols) {
  double worst = 0.0;
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const double g = sieig::dot(cols[i], cols[j]);
      worst = std::max(worst, std::fabs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace test_util
