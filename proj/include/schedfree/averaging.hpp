// Averaging-weight rules for the interpolation/averaging optimizer family.
//
// The averaged iterate is updated as x_{t+1} = (1 - c) x_t + c z_t; the rules
// below supply that weight. Indices follow the sequence convention: the
// weight with index k is the one applied when forming x_k, and c_0 := 1 is
// the anchor that makes the recursion reproduce a weighted average of
// z_0..z_{k-1}.
//
//   theory      c_k = gamma_k / sum_{i<=k} gamma_i
//   wsd-closed  the same weights for a wsd schedule, in closed form
//   heuristic   c_k = gamma_{k-1}^2 / sum_{i<=k-1} gamma_i^2
//   inverse-t   c_k = 1/k
//
// The ratios only depend on the schedule's shape, so callers may accumulate
// either gamma_t or the multiplier eta_t in the PrefixSums; this library's
// run loops accumulate eta_t, which keeps constant schedules integer-exact.
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "schedfree/schedules.hpp"

namespace schedfree {

enum class CtPolicy { theory, wsd_closed, heuristic, inverse_t };

/// c_t = gamma_t / S1_t with c_0 := 1. `sums` must already hold entries
/// 0..t and `gamma_t` must be the value stored at index t.
double ct_theory(std::uint64_t t, const PrefixSums& sums, double gamma_t);

/// Closed form of ct_theory for a wsd schedule with the given phase bounds.
/// Valid for 0 <= t <= T; throws std::out_of_range past the horizon and
/// std::invalid_argument if the phase bounds are not ordered.
double ct_wsd_closed(std::uint64_t t, std::uint64_t warmup_end,
                     std::uint64_t cooldown_start, std::uint64_t T);

/// Weight applied after step t: c_{t+1} = gamma_t^2 / S2_t. Equals 1 at
/// t = 0 by construction. `sums` must already hold entries 0..t.
double ct_heuristic(std::uint64_t t, const PrefixSums& sums);

/// c_t = 1/t. Throws std::invalid_argument at t = 0 (c_0 is the anchor 1,
/// not part of the 1/t family).
double ct_inverse_t(std::uint64_t t);

/// The weight a run loop should apply when forming x_k (k >= 1 after step
/// k-1; k = 0 returns the anchor weight 1). `sums` must hold the schedule
/// values for indices 0..k for the theory rule, 0..k-1 for the heuristic
/// rule. The wsd-closed rule requires a wsd `spec` and ignores `sums`.
double averaging_weight(CtPolicy policy, std::uint64_t k,
                        const ScheduleSpec& spec, const PrefixSums& sums);

std::string_view ct_policy_name(CtPolicy policy);
std::optional<CtPolicy> ct_policy_from_name(std::string_view name);

}  // namespace schedfree
