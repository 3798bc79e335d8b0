// The schedule-driven averaging iteration (schedulet).
//
// Reference (three-sequence) step:
//
//   y_t     = (1 - beta) z_{t-1} + beta x_t      gradient evaluation point
//   z_t     = z_{t-1} - gamma_t g(y_t)           accumulator
//   x_{t+1} = (1 - c_{t+1}) x_t + c_{t+1} z_t    offline average
//
// The practical form never materializes y as its own sequence: the gradient
// argument is built in a scratch buffer as x + (1 - beta) (z - x), which is
// the same point up to rounding. Both forms share SFState (x, z, t, prefix
// sums); beta is held constant within a run.
#pragma once

#include <cstdint>
#include <vector>

#include "schedfree/averaging.hpp"
#include "schedfree/bounds.hpp"
#include "schedfree/core.hpp"
#include "schedfree/schedules.hpp"

namespace schedfree {

struct SFConfig {
  double beta = 0.9;                    // in [0, 1]; 0 = averaged SGD, 1 = primal averaging
  ScheduleSpec schedule;                // gamma_t = base_lr * eta(t)
  CtPolicy policy = CtPolicy::theory;
  std::uint64_t steps = 0;              // T; at most schedule.horizon
  std::uint64_t seed = 0;
  bool track_bound = false;             // fill TraceRecord::bound from a live tracker
};

/// Throws std::invalid_argument when beta leaves [0,1], the schedule is
/// malformed, or steps exceeds the schedule horizon.
void validate(const SFConfig& cfg);

struct SFState {
  Point x;              // offline average x_t
  Point z;              // gradient accumulator z_{t-1}
  std::uint64_t t = 0;  // next step index
  PrefixSums sums;      // eta_0 .. eta_t, extended as steps execute
};

/// Starts a run at x0 with z_{-1} = x0; the prefix sums hold eta_0.
SFState sf_init(const SFConfig& cfg, const Point& x0);

/// One reference step at state.t. Returns the trace row (rate, averaging
/// weight, gradient norm, full loss at the new x). A non-finite gradient or
/// loss aborts with diverged_error carrying the step index; stepping past
/// the schedule horizon throws std::out_of_range. `tracker`, when given,
/// fills the row's bound column.
TraceRecord sf_step(SFState& state, const SFConfig& cfg,
                    const ProblemOracle& oracle,
                    OnlineBoundTracker* tracker = nullptr);

/// One practical-form step: identical contract to sf_step, with the gradient
/// argument built in place of y.
TraceRecord sf_step_practical(SFState& state, const SFConfig& cfg,
                              const ProblemOracle& oracle,
                              OnlineBoundTracker* tracker = nullptr);

/// Executes cfg.steps reference steps from x0 (z_{-1} = x0) and returns one
/// trace row per step; steps == 0 yields an empty trace. Deterministic given
/// the config and seed.
std::vector<TraceRecord> sf_run(const SFConfig& cfg,
                                const ProblemOracle& oracle, const Point& x0);

/// Same, starting from the oracle's canonical start point.
std::vector<TraceRecord> sf_run(const SFConfig& cfg,
                                const ProblemOracle& oracle);

/// Practical-form driver with the same contract as sf_run.
std::vector<TraceRecord> sf_run_practical(const SFConfig& cfg,
                                          const ProblemOracle& oracle,
                                          const Point& x0);

}  // namespace schedfree
