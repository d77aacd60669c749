#pragma once

// Data-parallel inner loops. Each kernel has a portable scalar reference and
// vectorized variants (AVX2 on x86-64, NEON on AArch64); the widest variant
// the CPU supports is picked once at startup. Variants produce bit-identical
// results: the distance kernel uses the same mul/add/sqrt sequence per lane
// and the min-plus reduction is exact regardless of evaluation order.

#include <cstddef>
#include <span>
#include <string_view>

namespace sdd::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// True if the variant is compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Variant used by the dispatching entry points below.
Isa active_isa();

/// Overrides the dispatch choice (tests, benchmarks). Returns false and
/// leaves the choice unchanged when `isa` is unavailable.
bool set_active_isa(Isa isa);

/// out[u*n+v] = sqrt((x[v]-x[u])^2 + (y[v]-y[u])^2) for n = xs.size().
void pairwise_distances(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out);

/// min_i (a[i] + b[i]); +inf for empty input. Infinite entries are allowed.
double min_plus(std::span<const double> a, std::span<const double> b);

namespace scalar {
void pairwise_distances(const double* xs, const double* ys, std::size_t n, double* out);
double min_plus(const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
void pairwise_distances(const double* xs, const double* ys, std::size_t n, double* out);
double min_plus(const double* a, const double* b, std::size_t n);
}  // namespace avx2

namespace neon {
void pairwise_distances(const double* xs, const double* ys, std::size_t n, double* out);
double min_plus(const double* a, const double* b, std::size_t n);
}  // namespace neon

}  // namespace sdd::kernels
