#include "schedfree/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_table.hpp"

namespace schedfree::simd {

namespace {

// Scalar reference kernels. Loops are written so that sumsq/sumsq_over and
// axpy/axpy_over share the same accumulation structure: dividing by an
// all-ones diagonal must reproduce the undivided kernel bitwise.

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sumsq_scalar(std::span<const double> a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * a[i];
  return s;
}

double sumsq_diff_scalar(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double dot_diff_scalar(std::span<const double> g, std::span<const double> a,
                       std::span<const double> b) {
  assert(g.size() == a.size() && a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * (a[i] - b[i]);
  return s;
}

double sumsq_over_scalar(std::span<const double> a, std::span<const double> d) {
  assert(a.size() == d.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * a[i] / d[i];
  return s;
}

void axpy_scalar(std::span<double> y, double alpha, std::span<const double> x) {
  assert(y.size() == x.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void axpy_over_scalar(std::span<double> y, double alpha,
                      std::span<const double> x, std::span<const double> d) {
  assert(y.size() == x.size() && x.size() == d.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * (x[i] / d[i]);
}

void lerp_scalar(std::span<double> out, std::span<const double> a,
                 std::span<const double> b, double w) {
  assert(out.size() == a.size() && a.size() == b.size());
  const double u = 1.0 - w;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u * a[i] + w * b[i];
}

constexpr detail::KernelTable kScalarTable = {
    dot_scalar,       sumsq_scalar,      sumsq_diff_scalar, dot_diff_scalar,
    sumsq_over_scalar, axpy_scalar,      axpy_over_scalar,  lerp_scalar,
};

struct Dispatch {
  const detail::KernelTable* table;
  Isa isa;
};

Dispatch resolve() {
  const char* env = std::getenv("SCHEDFREE_SIMD");
  const std::string want = env ? env : "auto";
  const detail::KernelTable* avx2 = detail::avx2_table();
  if (want == "scalar") return {&kScalarTable, Isa::scalar};
  if (want == "avx2") {
    if (!avx2) throw std::runtime_error("SCHEDFREE_SIMD=avx2: AVX2 unavailable on this CPU");
    return {avx2, Isa::avx2};
  }
  if (want != "auto")
    throw std::runtime_error("SCHEDFREE_SIMD: expected scalar|avx2|auto, got '" + want + "'");
  if (avx2) return {avx2, Isa::avx2};
  return {&kScalarTable, Isa::scalar};
}

Dispatch& dispatch() {
  static Dispatch d = resolve();
  return d;
}

}  // namespace

Isa active_isa() { return dispatch().isa; }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool avx2_supported() { return detail::avx2_table() != nullptr; }

void force_isa(Isa isa) {
  if (isa == Isa::avx2) {
    const detail::KernelTable* avx2 = detail::avx2_table();
    if (!avx2) throw std::invalid_argument("force_isa: AVX2 unavailable on this CPU");
    dispatch() = {avx2, Isa::avx2};
    return;
  }
  dispatch() = {&kScalarTable, Isa::scalar};
}

double dot(std::span<const double> a, std::span<const double> b) {
  return dispatch().table->dot(a, b);
}
double sumsq(std::span<const double> a) { return dispatch().table->sumsq(a); }
double sumsq_diff(std::span<const double> a, std::span<const double> b) {
  return dispatch().table->sumsq_diff(a, b);
}
double dot_diff(std::span<const double> g, std::span<const double> a,
                std::span<const double> b) {
  return dispatch().table->dot_diff(g, a, b);
}
double sumsq_over(std::span<const double> a, std::span<const double> d) {
  return dispatch().table->sumsq_over(a, d);
}
void axpy(std::span<double> y, double alpha, std::span<const double> x) {
  dispatch().table->axpy(y, alpha, x);
}
void axpy_over(std::span<double> y, double alpha, std::span<const double> x,
               std::span<const double> d) {
  dispatch().table->axpy_over(y, alpha, x, d);
}
void lerp(std::span<double> out, std::span<const double> a,
          std::span<const double> b, double w) {
  dispatch().table->lerp(out, a, b, w);
}

}  // namespace schedfree::simd
