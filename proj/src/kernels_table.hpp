#pragma once

// Internal dispatch table shared between the scalar and AVX2 kernel
// translation units. Not installed; include only from src/.

#include <span>

namespace schedfree::simd::detail {

struct KernelTable {
  double (*dot)(std::span<const double>, std::span<const double>);
  double (*sumsq)(std::span<const double>);
  double (*sumsq_diff)(std::span<const double>, std::span<const double>);
  double (*dot_diff)(std::span<const double>, std::span<const double>,
                     std::span<const double>);
  double (*sumsq_over)(std::span<const double>, std::span<const double>);
  void (*axpy)(std::span<double>, double, std::span<const double>);
  void (*axpy_over)(std::span<double>, double, std::span<const double>,
                    std::span<const double>);
  void (*lerp)(std::span<double>, std::span<const double>,
               std::span<const double>, double);
};

// Returns the AVX2 table, or nullptr when the host CPU (or build target)
// cannot run AVX2 code.
const KernelTable* avx2_table();

}  // namespace schedfree::simd::detail
