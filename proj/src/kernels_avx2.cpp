// AVX2 kernel variants.

// This translation unit is compiled without -mavx2 so the binary stays
// runnable on any x86-64; every vector function carries a target attribute
// and is only reachable through the runtime-dispatched table.
//
// Reductions accumulate four lanes and collapse them in the fixed order
// (p0+p1)+(p2+p3), then fold the remainder sequentially; the paired kernels
// (sumsq/sumsq_over, axpy/axpy_over) keep identical structure so an all-ones
// diagonal reproduces the unweighted kernel bitwise. No FMA: mul and add stay
// separate, which keeps elementwise results bit-identical to the scalar path.

#include "kernels_table.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cassert>
#include <cstddef>

namespace schedfree::simd::detail {

namespace {

#define SF_AVX2 __attribute__((target("avx2")))

SF_AVX2 inline double hsum(__m256d acc) {
  alignas(32) double p[4];
  _mm256_store_pd(p, acc);
  return (p[0] + p[1]) + (p[2] + p[3]);
}

SF_AVX2 double dot_avx2(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size(), n4 = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d va = _mm256_loadu_pd(a.data() + i);
    const __m256d vb = _mm256_loadu_pd(b.data() + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
  }
  double s = hsum(acc);
  for (std::size_t i = n4; i < n; ++i) s += a[i] * b[i];
  return s;
}

SF_AVX2 double sumsq_avx2(std::span<const double> a) {
  const std::size_t n = a.size(), n4 = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d va = _mm256_loadu_pd(a.data() + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(va, va));
  }
  double s = hsum(acc);
  for (std::size_t i = n4; i < n; ++i) s += a[i] * a[i];
  return s;
}

SF_AVX2 double sumsq_diff_avx2(std::span<const double> a,
                               std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size(), n4 = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d vd = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i),
                                     _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vd, vd));
  }
  double s = hsum(acc);
  for (std::size_t i = n4; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

SF_AVX2 double dot_diff_avx2(std::span<const double> g,
                             std::span<const double> a,
                             std::span<const double> b) {
  assert(g.size() == a.size() && a.size() == b.size());
  const std::size_t n = g.size(), n4 = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d vd = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i),
                                     _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(g.data() + i), vd));
  }
  double s = hsum(acc);
  for (std::size_t i = n4; i < n; ++i) s += g[i] * (a[i] - b[i]);
  return s;
}

SF_AVX2 double sumsq_over_avx2(std::span<const double> a,
                               std::span<const double> d) {
  assert(a.size() == d.size());
  const std::size_t n = a.size(), n4 = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d va = _mm256_loadu_pd(a.data() + i);
    const __m256d vd = _mm256_loadu_pd(d.data() + i);
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_mul_pd(va, va), vd));
  }
  double s = hsum(acc);
  for (std::size_t i = n4; i < n; ++i) s += a[i] * a[i] / d[i];
  return s;
}

SF_AVX2 void axpy_avx2(std::span<double> y, double alpha,
                       std::span<const double> x) {
  assert(y.size() == x.size());
  const std::size_t n = y.size(), n4 = n & ~std::size_t{3};
  const __m256d va = _mm256_set1_pd(alpha);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y.data() + i);
    const __m256d vx = _mm256_loadu_pd(x.data() + i);
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (std::size_t i = n4; i < n; ++i) y[i] += alpha * x[i];
}

SF_AVX2 void axpy_over_avx2(std::span<double> y, double alpha,
                            std::span<const double> x,
                            std::span<const double> d) {
  assert(y.size() == x.size() && x.size() == d.size());
  const std::size_t n = y.size(), n4 = n & ~std::size_t{3};
  const __m256d va = _mm256_set1_pd(alpha);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y.data() + i);
    const __m256d vq = _mm256_div_pd(_mm256_loadu_pd(x.data() + i),
                                     _mm256_loadu_pd(d.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vq)));
  }
  for (std::size_t i = n4; i < n; ++i) y[i] += alpha * (x[i] / d[i]);
}

SF_AVX2 void lerp_avx2(std::span<double> out, std::span<const double> a,
                       std::span<const double> b, double w) {
  assert(out.size() == a.size() && a.size() == b.size());
  const double u = 1.0 - w;
  const std::size_t n = out.size(), n4 = n & ~std::size_t{3};
  const __m256d vu = _mm256_set1_pd(u);
  const __m256d vw = _mm256_set1_pd(w);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d va = _mm256_mul_pd(vu, _mm256_loadu_pd(a.data() + i));
    const __m256d vb = _mm256_mul_pd(vw, _mm256_loadu_pd(b.data() + i));
    _mm256_storeu_pd(out.data() + i, _mm256_add_pd(va, vb));
  }
  for (std::size_t i = n4; i < n; ++i) out[i] = u * a[i] + w * b[i];
}

#undef SF_AVX2

constexpr KernelTable kAvx2Table = {
    dot_avx2,        sumsq_avx2,     sumsq_diff_avx2, dot_diff_avx2,
    sumsq_over_avx2, axpy_avx2,      axpy_over_avx2,  lerp_avx2,
};

}  // namespace

const KernelTable* avx2_table() {
  return __builtin_cpu_supports("avx2") ? &kAvx2Table : nullptr;
}

}  // namespace schedfree::simd::detail

#else  // non-x86: scalar only

namespace schedfree::simd::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace schedfree::simd::detail

#endif
