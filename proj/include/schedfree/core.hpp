// Shared vocabulary types: parameter vectors, trace records, the problem
// oracle interface, and a couple of geometry helpers built on the kernels.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "schedfree/kernels.hpp"

namespace schedfree {

/// Index of a data batch inside a problem's (finite) batch pool.
using BatchId = std::uint64_t;

/// A point in parameter space. Thin wrapper over a flat double vector so the
/// optimizers can hand spans to the kernels without copying.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::size_t dim, double fill = 0.0) : coords(dim, fill) {}
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  std::span<double> span() { return coords; }
  std::span<const double> span() const { return coords; }
  double& operator[](std::size_t i) { return coords[i]; }
  double operator[](std::size_t i) const { return coords[i]; }
};

/// One optimizer step as it lands in the trace. `bound` is only populated
/// when bound tracking is switched on; `stepsize_raw` only by the Polyak
/// variant (the uncapped stepsize before the cap is applied).
struct TraceRecord {
  std::uint64_t t = 0;
  double eta = 0.0;        // schedule value at t (1.0 for Polyak runs)
  double gamma = 0.0;      // learning rate actually applied at t
  double c = 0.0;          // averaging weight used to form x_{t+1}
  double loss = 0.0;       // full-objective loss at the averaged iterate
  double grad_norm = 0.0;  // Euclidean norm of the sampled gradient
  std::optional<double> bound;
  std::optional<double> stepsize_raw;
};

/// Ground-truth facts about a problem instance, available because every
/// problem in the corpus is built with a known minimizer.
struct OracleMetadata {
  Point x_star;       // a minimizer of the full objective
  double fstar = 0.0; // full-objective value at x_star
  double grad_bound = 0.0; // G: max over batches and the iterate ball of |grad|
  double dist0 = 0.0; // D: distance from the start point to x_star
};

/// Thrown when an optimizer produces a non-finite loss or iterate.
struct diverged_error : std::runtime_error {
  std::uint64_t step;
  explicit diverged_error(std::uint64_t at)
      : std::runtime_error("optimizer diverged at step " + std::to_string(at)),
        step(at) {}
};

/// A stochastic convex objective presented as a pool of batches. The full
/// objective is the mean of the batch objectives; `sample` fixes which batch
/// a given (step, seed) pair sees so runs are reproducible byte-for-byte.
class ProblemOracle {
 public:
  virtual ~ProblemOracle() = default;

  virtual std::size_t dim() const = 0;
  virtual std::size_t num_batches() const = 0;

  /// Batch drawn at step `t` for a run seeded with `seed`.
  virtual BatchId sample(std::uint64_t t, std::uint64_t seed) const = 0;

  virtual double batch_loss(std::span<const double> p, BatchId b) const = 0;
  virtual void batch_grad(std::span<const double> p, BatchId b,
                          std::span<double> out) const = 0;
  /// Loss and gradient of one batch in a single pass; returns the loss.
  virtual double batch_loss_grad(std::span<const double> p, BatchId b,
                                 std::span<double> out) const = 0;

  virtual double full_loss(std::span<const double> p) const = 0;

  /// Minimal value of batch `b` alone. The Polyak variant uses this as its
  /// per-batch target f_*(zeta).
  virtual double fstar_batch(BatchId b) const = 0;

  virtual const OracleMetadata& metadata() const = 0;
  virtual const Point& start() const = 0;
};

/// Euclidean distance between two points.
inline double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(simd::sumsq_diff(a, b));
}

/// out = (1 - w) * a + w * b, elementwise.
inline void convex_combination(std::span<double> out,
                               std::span<const double> a,
                               std::span<const double> b, double w) {
  simd::lerp(out, a, b, w);
}

}  // namespace schedfree
