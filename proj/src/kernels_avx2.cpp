// Compiled with -mavx2 only when the toolchain targets x86-64; callers reach
// these through the dispatcher, which checks CPU support first.

#include "sdd/kernels.hpp"

#if defined(SDD_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace sdd::kernels::avx2 {

void pairwise_distances(const double* xs, const double* ys, std::size_t n, double* out) {
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t u = 0; u < n; ++u) {
    const __m256d xu = _mm256_set1_pd(xs[u]);
    const __m256d yu = _mm256_set1_pd(ys[u]);
    double* row = out + u * n;
    std::size_t v = 0;
    for (; v < n4; v += 4) {
      const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + v), xu);
      const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + v), yu);
      // mul then add, no FMA: keeps lanes bit-identical to the scalar path
      const __m256d sq = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      _mm256_storeu_pd(row + v, _mm256_sqrt_pd(sq));
    }
    for (; v < n; ++v) {
      const double dx = xs[v] - xs[u];
      const double dy = ys[v] - ys[u];
      row[v] = std::sqrt(dx * dx + dy * dy);
    }
  }
}

double min_plus(const double* a, const double* b, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  __m256d acc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    const __m256d s = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_min_pd(acc, s);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double best = lanes[0];
  for (int k = 1; k < 4; ++k) {
    if (lanes[k] < best) {
      best = lanes[k];
    }
  }
  for (; i < n; ++i) {
    const double s = a[i] + b[i];
    if (s < best) {
      best = s;
    }
  }
  return best;
}

}  // namespace sdd::kernels::avx2

#else

namespace sdd::kernels::avx2 {

void pairwise_distances(const double* xs, const double* ys, std::size_t n, double* out) {
  scalar::pairwise_distances(xs, ys, n, out);
}

double min_plus(const double* a, const double* b, std::size_t n) {
  return scalar::min_plus(a, b, n);
}

}  // namespace sdd::kernels::avx2

#endif
