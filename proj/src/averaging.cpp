#include "schedfree/averaging.hpp"

#include <stdexcept>
#include <string>

namespace schedfree {

double ct_theory(std::uint64_t t, const PrefixSums& sums, double gamma_t) {
  if (t == 0) return 1.0;
  if (sums.value(t) != gamma_t) {
    throw std::invalid_argument(
        "ct_theory: gamma_t must equal the value stored at index t");
  }
  const double s1 = sums.s1(t);
  if (s1 <= 0.0) {
    throw std::domain_error("ct_theory: prefix sum through t is not positive");
  }
  return gamma_t / s1;
}

double ct_wsd_closed(std::uint64_t t, std::uint64_t warmup_end,
                     std::uint64_t cooldown_start, std::uint64_t T) {
  if (!(warmup_end <= cooldown_start && cooldown_start <= T)) {
    throw std::invalid_argument(
        "ct_wsd_closed requires warmup_end <= cooldown_start <= T");
  }
  if (t > T) {
    throw std::out_of_range("ct_wsd_closed: t=" + std::to_string(t) +
                            " past horizon T=" + std::to_string(T));
  }
  const std::uint64_t Tw = warmup_end, Tc = cooldown_start;
  // Each branch is one integer ratio, so the result is correctly rounded.
  if (t <= Tw) return 2.0 / static_cast<double>(t + 2);
  if (t <= Tc) return 2.0 / static_cast<double>(2 * t - Tw + 2);
  const std::uint64_t num = 2 * (T - t + 1);
  const std::uint64_t den =
      (T - Tc + 1) * (2 * Tc - Tw + 2) + (2 * T - Tc - t + 1) * (t - Tc);
  return static_cast<double>(num) / static_cast<double>(den);
}

double ct_heuristic(std::uint64_t t, const PrefixSums& sums) {
  const double v = sums.value(t);
  const double s2 = sums.s2(t);
  if (s2 <= 0.0) {
    throw std::domain_error(
        "ct_heuristic: squared prefix sum through t is not positive");
  }
  return v * v / s2;
}

double ct_inverse_t(std::uint64_t t) {
  if (t == 0) {
    throw std::invalid_argument("ct_inverse_t is defined for t >= 1");
  }
  return 1.0 / static_cast<double>(t);
}

double averaging_weight(CtPolicy policy, std::uint64_t k,
                        const ScheduleSpec& spec, const PrefixSums& sums) {
  if (k == 0) return 1.0;
  switch (policy) {
    case CtPolicy::theory:
      return ct_theory(k, sums, sums.value(k));
    case CtPolicy::wsd_closed:
      if (spec.kind != ScheduleKind::wsd) {
        throw std::invalid_argument(
            "wsd-closed averaging requires a wsd schedule");
      }
      return ct_wsd_closed(k, spec.warmup_end, spec.cooldown_start,
                           spec.horizon);
    case CtPolicy::heuristic:
      return ct_heuristic(k - 1, sums);
    case CtPolicy::inverse_t:
      return ct_inverse_t(k);
  }
  throw std::logic_error("unreachable averaging policy");
}

std::string_view ct_policy_name(CtPolicy policy) {
  switch (policy) {
    case CtPolicy::theory:
      return "theory";
    case CtPolicy::wsd_closed:
      return "wsd-closed";
    case CtPolicy::heuristic:
      return "heuristic";
    case CtPolicy::inverse_t:
      return "inverse-t";
  }
  return "unknown";
}

std::optional<CtPolicy> ct_policy_from_name(std::string_view name) {
  if (name == "theory") return CtPolicy::theory;
  if (name == "wsd-closed") return CtPolicy::wsd_closed;
  if (name == "heuristic") return CtPolicy::heuristic;
  if (name == "inverse-t") return CtPolicy::inverse_t;
  return std::nullopt;
}

}  // namespace schedfree
