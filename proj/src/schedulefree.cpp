#include "schedfree/schedulefree.hpp"

#include <cmath>
#include <stdexcept>

namespace schedfree {

namespace {

// Shared body of the reference and practical steps; `practical` only changes
// how the gradient argument is assembled.
TraceRecord step_impl(SFState& state, const SFConfig& cfg,
                      const ProblemOracle& oracle, bool practical,
                      OnlineBoundTracker* tracker) {
  const std::uint64_t t = state.t;
  if (t + 1 > cfg.schedule.horizon) {
    throw std::out_of_range(
        "sf_step: step index exceeds the schedule horizon");
  }
  if (state.sums.size() != t + 1) {
    throw std::logic_error("sf_step: prefix sums out of sync with state.t");
  }

  const std::size_t dim = oracle.dim();
  const double eta_t = state.sums.value(t);
  const double gamma_t = cfg.schedule.base_lr * eta_t;

  // Gradient evaluation point.
  Point eval(dim);
  if (practical) {
    const double u = 1.0 - cfg.beta;
    for (std::size_t i = 0; i < dim; ++i) {
      eval[i] = state.x[i] + u * (state.z[i] - state.x[i]);
    }
  } else {
    simd::lerp(eval.span(), state.z.span(), state.x.span(), cfg.beta);
  }

  const BatchId zeta = oracle.sample(t, cfg.seed);
  Point grad(dim);
  oracle.batch_grad(eval.span(), zeta, grad.span());
  const double grad_norm = std::sqrt(simd::sumsq(grad.span()));
  if (!std::isfinite(grad_norm)) {
    throw diverged_error(t);
  }

  simd::axpy(state.z.span(), -gamma_t, grad.span());

  state.sums.push(eta(cfg.schedule, t + 1));
  const double c = averaging_weight(cfg.policy, t + 1, cfg.schedule, state.sums);
  simd::lerp(state.x.span(), state.x.span(), state.z.span(), c);

  const double loss = oracle.full_loss(state.x.span());
  if (!std::isfinite(loss)) {
    throw diverged_error(t);
  }

  TraceRecord row;
  row.t = t;
  row.eta = eta_t;
  row.gamma = gamma_t;
  row.c = c;
  row.loss = loss;
  row.grad_norm = grad_norm;
  if (tracker != nullptr) {
    row.bound = tracker->update(gamma_t, grad_norm, loss, state.x.span());
  }
  state.t = t + 1;
  return row;
}

std::vector<TraceRecord> run_impl(const SFConfig& cfg,
                                  const ProblemOracle& oracle, const Point& x0,
                                  bool practical) {
  validate(cfg);
  if (x0.size() != oracle.dim()) {
    throw std::invalid_argument("sf_run: x0 dimension does not match oracle");
  }
  std::vector<TraceRecord> trace;
  if (cfg.steps == 0) {
    return trace;
  }
  trace.reserve(cfg.steps);
  SFState state = sf_init(cfg, x0);
  OnlineBoundTracker tracker(x0, cfg.track_bound
                                     ? oracle.full_loss(x0.span())
                                     : 0.0);
  OnlineBoundTracker* tracker_ptr = cfg.track_bound ? &tracker : nullptr;
  for (std::uint64_t t = 0; t < cfg.steps; ++t) {
    trace.push_back(
        step_impl(state, cfg, oracle, practical, tracker_ptr));
  }
  return trace;
}

}  // namespace

void validate(const SFConfig& cfg) {
  if (!std::isfinite(cfg.beta) || cfg.beta < 0.0 || cfg.beta > 1.0) {
    throw std::invalid_argument("SFConfig: beta must lie in [0, 1]");
  }
  validate(cfg.schedule);
  if (cfg.steps > cfg.schedule.horizon) {
    throw std::invalid_argument(
        "SFConfig: steps must not exceed the schedule horizon");
  }
}

SFState sf_init(const SFConfig& cfg, const Point& x0) {
  validate(cfg);
  SFState state;
  state.x = x0;
  state.z = x0;
  state.t = 0;
  state.sums.push(eta(cfg.schedule, 0));
  return state;
}

TraceRecord sf_step(SFState& state, const SFConfig& cfg,
                    const ProblemOracle& oracle, OnlineBoundTracker* tracker) {
  return step_impl(state, cfg, oracle, /*practical=*/false, tracker);
}

TraceRecord sf_step_practical(SFState& state, const SFConfig& cfg,
                              const ProblemOracle& oracle,
                              OnlineBoundTracker* tracker) {
  return step_impl(state, cfg, oracle, /*practical=*/true, tracker);
}

std::vector<TraceRecord> sf_run(const SFConfig& cfg,
                                const ProblemOracle& oracle, const Point& x0) {
  return run_impl(cfg, oracle, x0, /*practical=*/false);
}

std::vector<TraceRecord> sf_run(const SFConfig& cfg,
                                const ProblemOracle& oracle) {
  return run_impl(cfg, oracle, oracle.start(), /*practical=*/false);
}

std::vector<TraceRecord> sf_run_practical(const SFConfig& cfg,
                                          const ProblemOracle& oracle,
                                          const Point& x0) {
  return run_impl(cfg, oracle, x0, /*practical=*/true);
}

}  // namespace schedfree
