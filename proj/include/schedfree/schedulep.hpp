// Adaptive Polyak-stepsize variant (schedulep) of the averaging iteration,
// with a cap, a practical inner-product form, and an optional diagonal
// (Adam-style) preconditioner.
//
// Per step, with fixed averaging weights c_k = 1/(k+1):
//
//   y    = (1 - beta) z + beta x
//   tau  = (f(y) - fstar + beta <g, z - x>)_+ / ||g||^2     (plain)
//        = (f(y) - fstar + beta <g, z - x>)_+ / ||g||^2_{D^-1}  (preconditioned)
//   gamma = min(gamma_max, tau)
//   z   -= gamma g            (or gamma D^-1 g)
//   x    = (1 - c) x + c z
//
// tau is 0 by convention when the gradient vanishes. The preconditioner
// diagonal is refreshed from the squared gradient before the stepsize is
// computed; trace rows carry the uncapped tau in stepsize_raw and the
// applied rate in gamma.
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "schedfree/core.hpp"

namespace schedfree {

struct PolyakConfig {
  double beta = 0.9;  // in [0,1]; the anytime guarantee needs beta < 1
  double gamma_max = std::numeric_limits<double>::infinity();  // cap, >= 0
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  // Half-width of the symmetric perturbation added to each batch's fstar,
  // emulating an imperfect teacher; one draw per batch, stable across steps.
  double misspecification_noise = 0.0;
  bool track_bound = false;  // fill TraceRecord::bound with G D / sqrt(t+2)
};

/// Throws std::invalid_argument unless beta lies in [0,1], gamma_max is
/// nonnegative (possibly infinite), and the noise level is nonnegative
/// and finite. gamma_max = 0 is legal and freezes the iterates at x0.
void validate(const PolyakConfig& cfg);

/// Per-coordinate positive diagonal used by the preconditioned variant.
/// The running variant follows the Adam convention: an exponential moving
/// average v of squared gradients, bias-corrected, with d_i = sqrt(v_i) +
/// eps; a frozen preconditioner ignores observations and keeps its diagonal.
class DiagonalPreconditioner {
 public:
  static DiagonalPreconditioner adam(std::size_t dim, double ema_decay = 0.999,
                                     double eps = 1e-8);
  static DiagonalPreconditioner frozen_identity(std::size_t dim);
  /// Frozen preconditioner with an explicit diagonal (entries must be
  /// positive and finite).
  static DiagonalPreconditioner with_diagonal(std::vector<double> diag);

  /// Feeds one gradient into the moving average and refreshes the diagonal;
  /// no-op when frozen.
  void observe(std::span<const double> g);

  std::span<const double> diag() const { return d_; }
  std::size_t dim() const { return d_.size(); }
  bool frozen() const { return frozen_; }
  double eps() const { return eps_; }

 private:
  DiagonalPreconditioner() = default;
  std::vector<double> v_;  // moving average of squared gradients
  std::vector<double> d_;  // current diagonal
  double ema_decay_ = 0.999;
  double eps_ = 1e-8;
  std::uint64_t observations_ = 0;
  bool frozen_ = false;
};

/// tau = (fy - fstar + beta <g, z_prev - x>)_+ / ||g||^2; 0 when g = 0.
double polyak_stepsize(double fy, double fstar, std::span<const double> g,
                       std::span<const double> z_prev,
                       std::span<const double> x, double beta);

/// Same value computed from y = (1-beta) z_prev + beta x directly:
/// tau = (fy - fstar + <g, z_prev - y>)_+ / ||g||^2.
double polyak_stepsize_practical(double fy, double fstar,
                                 std::span<const double> g,
                                 std::span<const double> z_prev,
                                 std::span<const double> y);

/// gamma = min(gamma_max, tau).
double capped(double tau, double gamma_max);

/// Preconditioned stepsize: the denominator becomes sum_i g_i^2 / d_i.
/// Throws std::invalid_argument on a nonpositive diagonal entry.
double precond_polyak_stepsize(double fy, double fstar,
                               std::span<const double> g,
                               std::span<const double> z_prev,
                               std::span<const double> x, double beta,
                               const DiagonalPreconditioner& precond);

/// Runs cfg.steps Polyak steps from x0; one trace row per step (the row's
/// loss is the full loss at the new x). `precond`, when given, switches the
/// stepsize and z-update to the preconditioned forms and is mutated in
/// place. A non-finite stepsize or loss raises diverged_error with the step.
std::vector<TraceRecord> schedulep_run(const PolyakConfig& cfg,
                                       const ProblemOracle& oracle,
                                       const Point& x0,
                                       DiagonalPreconditioner* precond = nullptr);

/// Same, from the oracle's canonical start point.
std::vector<TraceRecord> schedulep_run(const PolyakConfig& cfg,
                                       const ProblemOracle& oracle,
                                       DiagonalPreconditioner* precond = nullptr);

}  // namespace schedfree
