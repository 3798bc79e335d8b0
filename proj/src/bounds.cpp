#include "schedfree/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schedfree {

namespace {

void check_positive_finite(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw std::invalid_argument(std::string(what) +
                                " must be positive and finite");
  }
}

double noise_term(std::span<const double> gammas,
                  std::span<const double> grad_norms) {
  double s = 0.0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    s += 0.5 * gammas[i] * gammas[i] * grad_norms[i] * grad_norms[i];
  }
  return s;
}

}  // namespace

double theorem1_bound(double D, double f0_gap, double S1,
                      std::span<const double> gammas,
                      std::span<const double> grad_norms) {
  if (gammas.empty()) {
    throw std::invalid_argument("theorem1_bound: gamma sequence is empty");
  }
  if (gammas.size() != grad_norms.size()) {
    throw std::invalid_argument(
        "theorem1_bound: gamma and gradient-norm sequences differ in length");
  }
  check_positive_finite(S1, "theorem1_bound: S1");
  if (D < 0.0 || f0_gap < 0.0) {
    throw std::invalid_argument(
        "theorem1_bound: D and f0_gap must be nonnegative");
  }
  for (double g : grad_norms) {
    if (!std::isfinite(g) || g < 0.0) {
      throw std::invalid_argument(
          "theorem1_bound: gradient norms must be nonnegative and finite");
    }
  }
  const double lead = 0.5 * D * D + gammas[0] * f0_gap;
  return lead / S1 + noise_term(gammas, grad_norms) / S1;
}

double theorem1_bound(double D, double f0_gap, double S1,
                      std::span<const double> gammas, double G) {
  if (!std::isfinite(G) || G < 0.0) {
    throw std::invalid_argument(
        "theorem1_bound: G must be nonnegative and finite");
  }
  std::vector<double> norms(gammas.size(), G);
  return theorem1_bound(D, f0_gap, S1, gammas, norms);
}

std::string_view bound_mode_name(BoundMode mode) {
  switch (mode) {
    case BoundMode::online:
      return "online";
    case BoundMode::posthoc:
      return "posthoc";
  }
  throw std::logic_error("unreachable bound mode");
}

std::optional<BoundMode> bound_mode_from_name(std::string_view name) {
  if (name == "online") return BoundMode::online;
  if (name == "posthoc") return BoundMode::posthoc;
  return std::nullopt;
}

std::vector<double> empirical_bound_trace(std::span<const TraceRecord> trace,
                                          BoundMode mode, double dhat,
                                          double f0) {
  if (trace.empty()) {
    throw std::invalid_argument(
        "empirical_bound_trace: trace must be non-empty");
  }
  if (!std::isfinite(dhat) || dhat < 0.0) {
    throw std::invalid_argument(
        "empirical_bound_trace: dhat must be nonnegative and finite");
  }
  if (!std::isfinite(f0)) {
    throw std::invalid_argument("empirical_bound_trace: f0 must be finite");
  }

  // The optimum proxy: best loss over the whole trace (posthoc) or best loss
  // seen so far (online); the start loss participates in both.
  double global_best = f0;
  if (mode == BoundMode::posthoc) {
    for (const TraceRecord& row : trace) {
      global_best = std::min(global_best, row.loss);
    }
  }

  std::vector<double> out;
  out.reserve(trace.size());
  const double gamma0 = trace[0].gamma;
  double s1 = 0.0;
  double noise = 0.0;
  double running_best = f0;
  for (const TraceRecord& row : trace) {
    if (!std::isfinite(row.gamma) || row.gamma < 0.0) {
      throw std::invalid_argument(
          "empirical_bound_trace: trace gamma must be nonnegative and finite");
    }
    if (!std::isfinite(row.grad_norm) || row.grad_norm < 0.0) {
      throw std::invalid_argument(
          "empirical_bound_trace: trace grad_norm must be nonnegative and "
          "finite");
    }
    s1 += row.gamma;
    noise += 0.5 * row.gamma * row.gamma * row.grad_norm * row.grad_norm;
    running_best = std::min(running_best, row.loss);
    const double fhat =
        (mode == BoundMode::posthoc) ? global_best : running_best;
    if (s1 <= 0.0) {
      throw std::invalid_argument(
          "empirical_bound_trace: learning-rate prefix sum is not positive");
    }
    const double lead = 0.5 * dhat * dhat + gamma0 * (f0 - fhat);
    out.push_back(lead / s1 + noise / s1);
  }
  return out;
}

double corollary1_optimal_lr(double D, double G, const ScheduleSpec& spec) {
  if (spec.kind != ScheduleKind::wsd) {
    throw std::invalid_argument(
        "corollary1_optimal_lr: requires a wsd schedule");
  }
  check_positive_finite(D, "corollary1_optimal_lr: D");
  check_positive_finite(G, "corollary1_optimal_lr: G");
  return D / (G * std::sqrt(sum_eta_sq(spec, spec.horizon)));
}

double corollary1_bound(double D, double G, double f0_gap,
                        const ScheduleSpec& spec) {
  if (spec.kind != ScheduleKind::wsd) {
    throw std::invalid_argument("corollary1_bound: requires a wsd schedule");
  }
  check_positive_finite(D, "corollary1_bound: D");
  check_positive_finite(G, "corollary1_bound: G");
  if (!std::isfinite(f0_gap) || f0_gap < 0.0) {
    throw std::invalid_argument(
        "corollary1_bound: f0_gap must be nonnegative and finite");
  }
  const double m = static_cast<double>(spec.horizon + spec.cooldown_start -
                                       spec.warmup_end + 2);
  const double eta0 = eta(spec, 0);
  return 2.0 * eta0 * f0_gap / m +
         2.0 * std::sqrt(2.0 / 3.0) * D * G / std::sqrt(m);
}

double theorem2_bound(double G, double D, std::uint64_t t) {
  if (!std::isfinite(G) || G < 0.0 || !std::isfinite(D) || D < 0.0) {
    throw std::invalid_argument(
        "theorem2_bound: G and D must be nonnegative and finite");
  }
  return G * D / std::sqrt(static_cast<double>(t) + 1.0);
}

OnlineBoundTracker::OnlineBoundTracker(Point x0, double f0)
    : x0_(std::move(x0)), f0_(f0), best_loss_(f0) {
  if (!std::isfinite(f0)) {
    throw std::invalid_argument("OnlineBoundTracker: f0 must be finite");
  }
}

double OnlineBoundTracker::update(double gamma, double grad_norm, double loss,
                                  std::span<const double> iterate) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw std::invalid_argument(
        "OnlineBoundTracker: gamma must be nonnegative and finite");
  }
  if (!std::isfinite(grad_norm) || grad_norm < 0.0) {
    throw std::invalid_argument(
        "OnlineBoundTracker: grad_norm must be nonnegative and finite");
  }
  if (iterate.size() != x0_.size()) {
    throw std::invalid_argument(
        "OnlineBoundTracker: iterate dimension does not match x0");
  }
  if (sums_.size() == 0) {
    gamma0_ = gamma;
  }
  sums_.push(gamma);
  noise_sum_ += 0.5 * gamma * gamma * grad_norm * grad_norm;
  if (std::isfinite(loss) && loss < best_loss_) {
    best_loss_ = loss;
    dhat_ = std::sqrt(simd::sumsq_diff(x0_.span(), iterate));
  }
  const double s1 = sums_.s1(sums_.size() - 1);
  if (s1 <= 0.0) {
    throw std::invalid_argument(
        "OnlineBoundTracker: learning-rate prefix sum is not positive");
  }
  const double lead = 0.5 * dhat_ * dhat_ + gamma0_ * (f0_ - best_loss_);
  return lead / s1 + noise_sum_ / s1;
}

}  // namespace schedfree
