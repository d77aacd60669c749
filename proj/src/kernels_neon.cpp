#include "sdd/kernels.hpp"

#if defined(__ARM_NEON) && defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <limits>

namespace sdd::kernels::neon {

void pairwise_distances(const double* xs, const double* ys, std::size_t n, double* out) {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t u = 0; u < n; ++u) {
    const float64x2_t xu = vdupq_n_f64(xs[u]);
    const float64x2_t yu = vdupq_n_f64(ys[u]);
    double* row = out + u * n;
    std::size_t v = 0;
    for (; v < n2; v += 2) {
      const float64x2_t dx = vsubq_f64(vld1q_f64(xs + v), xu);
      const float64x2_t dy = vsubq_f64(vld1q_f64(ys + v), yu);
      const float64x2_t sq = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
      vst1q_f64(row + v, vsqrtq_f64(sq));
    }
    for (; v < n; ++v) {
      const double dx = xs[v] - xs[u];
      const double dy = ys[v] - ys[u];
      row[v] = std::sqrt(dx * dx + dy * dy);
    }
  }
}

double min_plus(const double* a, const double* b, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t{1};
  float64x2_t acc = vdupq_n_f64(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    acc = vminq_f64(acc, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double best = vminvq_f64(acc);
  for (; i < n; ++i) {
    const double s = a[i] + b[i];
    if (s < best) {
      best = s;
    }
  }
  return best;
}

}  // namespace sdd::kernels::neon

#else

namespace sdd::kernels::neon {

void pairwise_distances(const double* xs, const double* ys, std::size_t n, double* out) {
  scalar::pairwise_distances(xs, ys, n, out);
}

double min_plus(const double* a, const double* b, std::size_t n) {
  return scalar::min_plus(a, b, n);
}

}  // namespace sdd::kernels::neon

#endif
