// Closed-form convergence bounds and the empirical per-step bound track.
//
// The trace bound has the shape
//
//   B = (0.5 D^2 + gamma_0 * (f(x_0) - f*)) / S1  +  sum_t 0.5 gamma_t^2 G_t^2 / S1
//
// with S1 the learning-rate prefix sum; G_t is either the constant gradient
// bound or an observed per-step norm. The wsd-specialized bound and its
// optimal base rate, plus the anytime G*D/sqrt(t+1) bound, are evaluated
// directly from their parameters. The empirical track replays a recorded
// trace (or follows a live run) using observed gradient norms as the proxy
// for G and a best-seen iterate as the proxy for the optimum.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "schedfree/core.hpp"
#include "schedfree/schedules.hpp"

namespace schedfree {

/// Trace bound with per-step gradient norms G_t. `gammas` and `grad_norms`
/// must be equally sized and non-empty, S1 positive, norms nonnegative.
double theorem1_bound(double D, double f0_gap, double S1,
                      std::span<const double> gammas,
                      std::span<const double> grad_norms);

/// Same bound with one constant gradient bound G for every step.
double theorem1_bound(double D, double f0_gap, double S1,
                      std::span<const double> gammas, double G);

/// How the empirical track estimates the unknown optimum from a run:
/// `posthoc` uses the best loss of the whole trace, `online` the running
/// best seen so far (anytime flavor).
enum class BoundMode { online, posthoc };

std::string_view bound_mode_name(BoundMode mode);
std::optional<BoundMode> bound_mode_from_name(std::string_view name);

/// Replays a recorded trace into per-step bound values B_t. Uses each row's
/// gamma and grad_norm; `dhat` is the caller's distance estimate (traces do
/// not carry iterates) and `f0` the full loss at the start point, which also
/// seeds the best-loss estimate. Throws std::invalid_argument on an empty
/// trace.
std::vector<double> empirical_bound_trace(std::span<const TraceRecord> trace,
                                          BoundMode mode, double dhat,
                                          double f0);

/// Optimal base rate D / (G * sqrt(sum eta^2)) for a wsd schedule.
double corollary1_optimal_lr(double D, double G, const ScheduleSpec& spec);

/// wsd bound 2 eta_0 f0_gap / M + 2 sqrt(2/3) D G / sqrt(M) with
/// M = T + T_c - T_w + 2.
double corollary1_bound(double D, double G, double f0_gap,
                        const ScheduleSpec& spec);

/// Anytime bound G * D / sqrt(t+1).
double theorem2_bound(double G, double D, std::uint64_t t);

/// Live companion of empirical_bound_trace for a running optimizer, which
/// (unlike a trace) can see iterates: the distance estimate is from x_0 to
/// the best-loss iterate seen so far, and the best loss starts at f(x_0).
class OnlineBoundTracker {
 public:
  OnlineBoundTracker(Point x0, double f0);

  /// Feeds one step (applied rate, observed gradient norm, full loss of the
  /// new iterate, the iterate itself) and returns the current bound value.
  double update(double gamma, double grad_norm, double loss,
                std::span<const double> iterate);

  double best_loss() const { return best_loss_; }
  double dhat() const { return dhat_; }

 private:
  Point x0_;
  double f0_;
  double best_loss_;
  double dhat_ = 0.0;
  double noise_sum_ = 0.0;
  double gamma0_ = 0.0;
  PrefixSums sums_;
};

}  // namespace schedfree
