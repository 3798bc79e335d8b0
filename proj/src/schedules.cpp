#include "schedfree/schedules.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace schedfree {

namespace {

// Exact triangular / square-pyramidal numbers. 128-bit intermediates keep
// the arithmetic exact far past any horizon this library is pointed at;
// the single cast to double at the end is the only rounding.
__int128 tri(std::uint64_t m) {
  const __int128 mm = m;
  return mm * (mm + 1) / 2;
}

__int128 pyr(std::uint64_t m) {
  const __int128 mm = m;
  return mm * (mm + 1) * (2 * mm + 1) / 6;
}

double to_d(__int128 v) { return static_cast<double>(v); }

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_step(const ScheduleSpec& spec, std::uint64_t t) {
  if (t > spec.horizon) {
    throw std::out_of_range("schedule evaluated past its horizon (t=" +
                            std::to_string(t) +
                            ", T=" + std::to_string(spec.horizon) + ")");
  }
}

}  // namespace

void validate(const ScheduleSpec& spec) {
  require(std::isfinite(spec.base_lr) && spec.base_lr > 0.0,
          "schedule base_lr must be finite and positive");
  switch (spec.kind) {
    case ScheduleKind::constant:
      break;
    case ScheduleKind::wsd:
      require(spec.warmup_end <= spec.cooldown_start,
              "wsd schedule requires warmup_end <= cooldown_start");
      require(spec.cooldown_start <= spec.horizon,
              "wsd schedule requires cooldown_start <= horizon");
      break;
    case ScheduleKind::cosine:
      require(spec.warmup_end < spec.horizon,
              "cosine schedule requires warmup_end < horizon");
      break;
    case ScheduleKind::constant_then_diverge:
      require(spec.cooldown_start <= spec.horizon,
              "constant-then-diverge requires onset <= horizon");
      require(std::isfinite(spec.diverge_slope) && spec.diverge_slope >= 0.0,
              "constant-then-diverge slope must be finite and nonnegative");
      break;
  }
}

ScheduleSpec make_constant(double base_lr, std::uint64_t T) {
  ScheduleSpec spec{ScheduleKind::constant, base_lr, T, 0, 0, 0.0};
  validate(spec);
  return spec;
}

ScheduleSpec make_wsd(double base_lr, std::uint64_t T, std::uint64_t warmup_end,
                      std::uint64_t cooldown_start) {
  ScheduleSpec spec{ScheduleKind::wsd, base_lr, T, warmup_end, cooldown_start,
                    0.0};
  validate(spec);
  return spec;
}

ScheduleSpec make_wsd_frac(double base_lr, std::uint64_t T, double warmup_frac,
                           double cooldown_frac) {
  require(warmup_frac >= 0.0 && warmup_frac <= 1.0 && cooldown_frac >= 0.0 &&
              cooldown_frac <= 1.0,
          "wsd warmup/cooldown fractions must lie in [0, 1]");
  const auto warm = static_cast<std::uint64_t>(
      std::floor(warmup_frac * static_cast<double>(T)));
  const auto cool = static_cast<std::uint64_t>(
      std::floor(cooldown_frac * static_cast<double>(T)));
  require(warm + cool <= T,
          "wsd warmup and cooldown fractions overlap at this horizon");
  return make_wsd(base_lr, T, warm, T - cool);
}

ScheduleSpec make_cosine(double base_lr, std::uint64_t T,
                         std::uint64_t warmup_end) {
  ScheduleSpec spec{ScheduleKind::cosine, base_lr, T, warmup_end, 0, 0.0};
  validate(spec);
  return spec;
}

ScheduleSpec make_constant_then_diverge(double base_lr, std::uint64_t T,
                                        std::uint64_t onset, double slope) {
  ScheduleSpec spec{ScheduleKind::constant_then_diverge, base_lr, T, 0, onset,
                    slope};
  validate(spec);
  return spec;
}

double eta(const ScheduleSpec& spec, std::uint64_t t) {
  check_step(spec, t);
  switch (spec.kind) {
    case ScheduleKind::constant:
      return 1.0;
    case ScheduleKind::wsd: {
      const std::uint64_t Tw = spec.warmup_end, Tc = spec.cooldown_start,
                          T = spec.horizon;
      if (t <= Tw) return static_cast<double>(t + 1) / static_cast<double>(Tw + 1);
      if (t <= Tc) return 1.0;
      return static_cast<double>(T - t + 1) / static_cast<double>(T - Tc + 1);
    }
    case ScheduleKind::cosine: {
      const std::uint64_t Tw = spec.warmup_end, T = spec.horizon;
      if (t <= Tw) return static_cast<double>(t + 1) / static_cast<double>(Tw + 1);
      if (t == T) return 0.0;  // the half cosine lands exactly on zero
      const double frac =
          static_cast<double>(t - Tw) / static_cast<double>(T - Tw);
      constexpr double pi = 3.14159265358979323846;
      return 0.5 * (1.0 + std::cos(pi * frac));
    }
    case ScheduleKind::constant_then_diverge: {
      const std::uint64_t Tc = spec.cooldown_start;
      if (t <= Tc) return 1.0;
      return 1.0 + spec.diverge_slope * static_cast<double>(t - Tc);
    }
  }
  throw std::logic_error("unreachable schedule kind");
}

double gamma(const ScheduleSpec& spec, std::uint64_t t) {
  return spec.base_lr * eta(spec, t);
}

double sum_eta(const ScheduleSpec& spec, std::uint64_t t) {
  check_step(spec, t);
  switch (spec.kind) {
    case ScheduleKind::constant:
      return static_cast<double>(t + 1);
    case ScheduleKind::wsd: {
      const std::uint64_t Tw = spec.warmup_end, Tc = spec.cooldown_start,
                          T = spec.horizon;
      // Warmup: sum of (i+1)/(Tw+1) is a triangular number over Tw+1.
      if (t <= Tw) return to_d(tri(t + 1)) / static_cast<double>(Tw + 1);
      // Full warmup collapses to (Tw+2)/2, a half-integer, hence exact.
      const double warm = static_cast<double>(Tw + 2) / 2.0;
      if (t <= Tc) return warm + static_cast<double>(t - Tw);
      const double head = warm + static_cast<double>(Tc - Tw);
      // Cooldown: sum of (T-i+1)/(T-Tc+1) over i = Tc+1..t, reindexed as a
      // difference of triangular numbers.
      const double tail =
          to_d(tri(T - Tc) - tri(T - t)) / static_cast<double>(T - Tc + 1);
      return head + tail;
    }
    case ScheduleKind::cosine: {
      double s = 0.0;
      for (std::uint64_t i = 0; i <= t; ++i) s += eta(spec, i);
      return s;
    }
    case ScheduleKind::constant_then_diverge: {
      const std::uint64_t Tc = spec.cooldown_start;
      if (t <= Tc) return static_cast<double>(t + 1);
      return static_cast<double>(t + 1) +
             spec.diverge_slope * to_d(tri(t - Tc));
    }
  }
  throw std::logic_error("unreachable schedule kind");
}

double sum_eta_sq(const ScheduleSpec& spec, std::uint64_t t) {
  check_step(spec, t);
  switch (spec.kind) {
    case ScheduleKind::constant:
      return static_cast<double>(t + 1);
    case ScheduleKind::wsd: {
      const std::uint64_t Tw = spec.warmup_end, Tc = spec.cooldown_start,
                          T = spec.horizon;
      const double wden =
          static_cast<double>(Tw + 1) * static_cast<double>(Tw + 1);
      if (t <= Tw) return to_d(pyr(t + 1)) / wden;
      const double warm = to_d(pyr(Tw + 1)) / wden;
      if (t <= Tc) return warm + static_cast<double>(t - Tw);
      const double head = warm + static_cast<double>(Tc - Tw);
      const double cden =
          static_cast<double>(T - Tc + 1) * static_cast<double>(T - Tc + 1);
      const double tail = to_d(pyr(T - Tc) - pyr(T - t)) / cden;
      return head + tail;
    }
    case ScheduleKind::cosine: {
      double s = 0.0;
      for (std::uint64_t i = 0; i <= t; ++i) {
        const double e = eta(spec, i);
        s += e * e;
      }
      return s;
    }
    case ScheduleKind::constant_then_diverge: {
      const std::uint64_t Tc = spec.cooldown_start;
      if (t <= Tc) return static_cast<double>(t + 1);
      const std::uint64_t m = t - Tc;
      const double s = spec.diverge_slope;
      return static_cast<double>(Tc + 1) + static_cast<double>(m) +
             2.0 * s * to_d(tri(m)) + s * s * to_d(pyr(m));
    }
  }
  throw std::logic_error("unreachable schedule kind");
}

std::string_view schedule_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::constant:
      return "constant";
    case ScheduleKind::wsd:
      return "wsd";
    case ScheduleKind::cosine:
      return "cosine";
    case ScheduleKind::constant_then_diverge:
      return "constant-then-diverge";
  }
  return "unknown";
}

std::optional<ScheduleKind> schedule_from_name(std::string_view name) {
  if (name == "constant") return ScheduleKind::constant;
  if (name == "wsd") return ScheduleKind::wsd;
  if (name == "cosine") return ScheduleKind::cosine;
  if (name == "constant-then-diverge")
    return ScheduleKind::constant_then_diverge;
  return std::nullopt;
}

void PrefixSums::push(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument(
        "PrefixSums values must be nonnegative and finite");
  }
  const double p1 = s1_.empty() ? 0.0 : s1_.back();
  const double p2 = s2_.empty() ? 0.0 : s2_.back();
  vals_.push_back(v);
  s1_.push_back(p1 + v);
  s2_.push_back(p2 + v * v);
}

namespace {
[[noreturn]] void index_oob(std::size_t i, std::size_t n) {
  throw std::out_of_range("PrefixSums index " + std::to_string(i) +
                          " out of range (size " + std::to_string(n) + ")");
}
}  // namespace

double PrefixSums::value(std::size_t i) const {
  if (i >= vals_.size()) index_oob(i, vals_.size());
  return vals_[i];
}

double PrefixSums::s1(std::size_t i) const {
  if (i >= s1_.size()) index_oob(i, s1_.size());
  return s1_[i];
}

double PrefixSums::s2(std::size_t i) const {
  if (i >= s2_.size()) index_oob(i, s2_.size());
  return s2_[i];
}

}  // namespace schedfree
