#pragma once

// Dense double-precision kernels used by every optimizer loop. Each kernel has
// a scalar reference implementation and an AVX2 variant; the active set is
// chosen once per process from CPUID (override with SCHEDFREE_SIMD=scalar|avx2
// or force_isa() in tests). Elementwise kernels produce bit-identical results
// across implementations; reductions may differ by association order and are
// equivalence-tested against the scalar reference under a small tolerance.
//
// Reduction pairs that feed the same algorithmic slot (sumsq/sumsq_over,
// axpy/axpy_over) deliberately share one accumulation structure so that a
// division by an all-ones vector reproduces the undivided result bitwise.

#include <cstddef>
#include <span>
#include <string_view>

namespace schedfree::simd {

enum class Isa { scalar, avx2 };

// Implementation actually in use (resolved on first call).
Isa active_isa();
std::string_view isa_name(Isa isa);
bool avx2_supported();

// Test hook: override the dispatch choice for the rest of the process.
// Throws std::invalid_argument if the requested ISA is unsupported here.
void force_isa(Isa isa);

// --- reductions -----------------------------------------------------------
double dot(std::span<const double> a, std::span<const double> b);
double sumsq(std::span<const double> a);
// sum (a_i - b_i)^2
double sumsq_diff(std::span<const double> a, std::span<const double> b);
// sum g_i * (a_i - b_i)
double dot_diff(std::span<const double> g, std::span<const double> a,
                std::span<const double> b);
// sum a_i^2 / d_i  (diagonally weighted squared norm; d_i > 0)
double sumsq_over(std::span<const double> a, std::span<const double> d);

// --- elementwise ----------------------------------------------------------
// y_i += alpha * x_i
void axpy(std::span<double> y, double alpha, std::span<const double> x);
// y_i += alpha * x_i / d_i
void axpy_over(std::span<double> y, double alpha, std::span<const double> x,
               std::span<const double> d);
// out_i = (1 - w) * a_i + w * b_i   (exact at w == 0 and w == 1)
// `out` may alias `a` or `b`: both implementations read each element block
// before writing it.
void lerp(std::span<double> out, std::span<const double> a,
          std::span<const double> b, double w);

}  // namespace schedfree::simd
