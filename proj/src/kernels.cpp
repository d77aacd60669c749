#include <stdexcept>

#include "sdd/kernels.hpp"

namespace sdd::kernels {

namespace {

struct Table {
  Isa isa;
  void (*pairwise)(const double*, const double*, std::size_t, double*);
  double (*min_plus)(const double*, const double*, std::size_t);
};

Table table_for(Isa isa) {
  switch (isa) {
    case Isa::Avx2:
      return {isa, &avx2::pairwise_distances, &avx2::min_plus};
    case Isa::Neon:
      return {isa, &neon::pairwise_distances, &neon::min_plus};
    case Isa::Scalar:
      break;
  }
  return {Isa::Scalar, &scalar::pairwise_distances, &scalar::min_plus};
}

Isa detect() {
  if (isa_available(Isa::Avx2)) {
    return Isa::Avx2;
  }
  if (isa_available(Isa::Neon)) {
    return Isa::Neon;
  }
  return Isa::Scalar;
}

Table& active() {
  static Table t = table_for(detect());
  return t;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(SDD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__ARM_NEON) && defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return active().isa; }

bool set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    return false;
  }
  active() = table_for(isa);
  return true;
}

void pairwise_distances(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out) {
  const std::size_t n = xs.size();
  if (ys.size() != n || out.size() != n * n) {
    throw std::invalid_argument("pairwise_distances: size mismatch");
  }
  active().pairwise(xs.data(), ys.data(), n, out.data());
}

double min_plus(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("min_plus: size mismatch");
  }
  return active().min_plus(a.data(), b.data(), a.size());
}

}  // namespace sdd::kernels
