#include <cmath>
#include <limits>

#include "sdd/kernels.hpp"

namespace sdd::kernels::scalar {

void pairwise_distances(const double* xs, const double* ys, std::size_t n, double* out) {
  for (std::size_t u = 0; u < n; ++u) {
    const double xu = xs[u];
    const double yu = ys[u];
    double* row = out + u * n;
    for (std::size_t v = 0; v < n; ++v) {
      const double dx = xs[v] - xu;
      const double dy = ys[v] - yu;
      row[v] = std::sqrt(dx * dx + dy * dy);
    }
  }
}

double min_plus(const double* a, const double* b, std::size_t n) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double s = a[i] + b[i];
    if (s < best) {
      best = s;
    }
  }
  return best;
}

}  // namespace sdd::kernels::scalar
