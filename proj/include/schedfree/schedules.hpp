// Learning-rate schedules over a fixed horizon, their closed-form prefix
// sums, and a running prefix-sum accumulator for the optimizer loop.
//
// A schedule assigns a multiplier eta_t to every step t = 0..T (the horizon,
// inclusive); the applied rate is gamma_t = base_lr * eta_t. Four kinds:
//
//   constant               eta = 1 everywhere
//   wsd                    linear warmup to T_w, stable 1, linear decay to
//                          1/(T - T_c + 1) over (T_c, T]
//   cosine                 linear warmup to T_w, then a half cosine that
//                          reaches exactly 0 at t = T
//   constant-then-diverge  1 until the onset T_c, then 1 + slope*(t - T_c)
//
// Except for the cosine tail, prefix sums are evaluated in closed form with
// integer-exact phase arithmetic so that identities like the wsd total
// sum_eta(T) == (T + T_c - T_w + 2)/2 hold to the last bit.
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace schedfree {

enum class ScheduleKind { constant, wsd, cosine, constant_then_diverge };

/// Parameter pack for one schedule. Build through the make_* factories,
/// which validate; `validate` can re-check a hand-assembled spec.
struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::constant;
  double base_lr = 1.0;
  std::uint64_t horizon = 0;         // T: last valid step index
  std::uint64_t warmup_end = 0;      // T_w (wsd, cosine)
  std::uint64_t cooldown_start = 0;  // T_c (wsd); divergence onset (ctd)
  double diverge_slope = 0.0;        // ctd only
};

ScheduleSpec make_constant(double base_lr, std::uint64_t T);
ScheduleSpec make_wsd(double base_lr, std::uint64_t T, std::uint64_t warmup_end,
                      std::uint64_t cooldown_start);
/// wsd with T_w = floor(warmup_frac * T) and T_c = T - floor(cooldown_frac * T).
ScheduleSpec make_wsd_frac(double base_lr, std::uint64_t T, double warmup_frac,
                           double cooldown_frac);
ScheduleSpec make_cosine(double base_lr, std::uint64_t T,
                         std::uint64_t warmup_end);
ScheduleSpec make_constant_then_diverge(double base_lr, std::uint64_t T,
                                        std::uint64_t onset, double slope);

/// Throws std::invalid_argument if the spec's fields are inconsistent.
void validate(const ScheduleSpec& spec);

/// Schedule multiplier at step t. Throws std::out_of_range past the horizon.
/// Strictly positive everywhere except cosine at t == T, where it is 0.
double eta(const ScheduleSpec& spec, std::uint64_t t);

/// base_lr * eta(spec, t).
double gamma(const ScheduleSpec& spec, std::uint64_t t);

/// Sum of eta_i for i = 0..t (inclusive). Closed form except the cosine tail.
double sum_eta(const ScheduleSpec& spec, std::uint64_t t);

/// Sum of eta_i^2 for i = 0..t (inclusive).
double sum_eta_sq(const ScheduleSpec& spec, std::uint64_t t);

std::string_view schedule_name(ScheduleKind kind);
std::optional<ScheduleKind> schedule_from_name(std::string_view name);

/// Running prefix sums of a nonnegative sequence (schedule values as the
/// optimizer walks forward), indexable at any past position. Storage is one
/// entry per push, so a run of N steps costs O(N) memory here.
class PrefixSums {
 public:
  /// Appends v. Throws std::invalid_argument unless v >= 0 and finite.
  void push(double v);

  std::size_t size() const { return vals_.size(); }

  /// The i-th pushed value / cumulative sums through index i.
  /// All three throw std::out_of_range for i >= size().
  double value(std::size_t i) const;
  double s1(std::size_t i) const;
  double s2(std::size_t i) const;

 private:
  std::vector<double> vals_, s1_, s2_;
};

}  // namespace schedfree
