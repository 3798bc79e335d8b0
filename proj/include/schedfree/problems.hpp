// Desk-scale convex problem corpus with exact ground-truth metadata.
//
// Every oracle is built from a seed-determined dataset and knows its own
// minimizer x_star, optimal value, per-batch optimal values, and a gradient
// bound G valid on the ball ||x - x_star|| <= dist0 (global for the
// non-smooth absolute-value family). The corpus stands in for large-scale
// experiments while keeping every quantity checkable:
//
//   quadratic       0.5 (x-x*)' H_b (x-x*), diagonal H_b, shared minimizer
//   abs             |a_i' x - b_i| rows with b = A x*; G = max row norm
//   least_squares   0.5 (a_i' x - b_i)^2 rows with b = A x* (interpolating)
//   logistic        regularized logistic rows; minimizer found at build time
//                   by a Newton solve to gradient norm <= 1e-12
//   teacher         least_squares whose fstar_batch is deliberately
//                   perturbed by per-batch noise (an imperfect target
//                   oracle); metadata still reports the true optimum
#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "schedfree/core.hpp"

namespace schedfree {

enum class ProblemKind { quadratic, abs, least_squares, logistic, teacher };

/// Construction recipe for one problem instance. `cond` grades row/eigen
/// scales geometrically, `scale` sets the magnitude of the planted solution
/// (quadratic: of the eigenvalues), `noise` is the teacher's per-batch
/// fstar perturbation half-width.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::quadratic;
  std::size_t dim = 1;
  std::size_t n = 1;
  double cond = 1.0;
  double scale = 1.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

/// Builds the oracle. Throws std::invalid_argument naming the offending
/// field if the spec is inconsistent.
std::unique_ptr<ProblemOracle> build(const ProblemSpec& spec);

/// Named ready-made instances: abs1d, quad1d, lsq10, lsq20, logistic5,
/// teacher10. Throws std::invalid_argument for unknown names.
ProblemSpec preset(std::string_view name);
std::vector<std::string_view> preset_names();

/// Convenience wrapper returning (loss, gradient) of one batch at p.
std::pair<double, Point> batch_loss_and_grad(const ProblemOracle& oracle,
                                             const Point& p, BatchId b);

std::string_view problem_kind_name(ProblemKind kind);
std::optional<ProblemKind> problem_kind_from_name(std::string_view name);

}  // namespace schedfree
