#include "schedfree/schedules.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

namespace {

using namespace schedfree;

// Independent oracle: accumulate eta term by term.
double direct_sum(const ScheduleSpec& spec, std::uint64_t t, bool squared) {
  double s = 0.0;
  for (std::uint64_t i = 0; i <= t; ++i) {
    const double e = eta(spec, i);
    s += squared ? e * e : e;
  }
  return s;
}

void check_sums_against_direct(const ScheduleSpec& spec) {
  for (std::uint64_t t : {std::uint64_t{0}, spec.horizon / 3,
                          spec.horizon / 2, spec.horizon}) {
    const double s1 = sum_eta(spec, t);
    const double s2 = sum_eta_sq(spec, t);
    CHECK(std::abs(s1 - direct_sum(spec, t, false)) <= 1e-12 * (1.0 + s1));
    CHECK(std::abs(s2 - direct_sum(spec, t, true)) <= 1e-12 * (1.0 + s2));
  }
}

}  // namespace

TEST_CASE("constant schedule is flat with integer sums") {
  const auto spec = make_constant(0.1, 100);
  CHECK(eta(spec, 0) == 1.0);
  CHECK(eta(spec, 100) == 1.0);
  CHECK(gamma(spec, 42) == 0.1);
  CHECK(sum_eta(spec, 99) == 100.0);
  CHECK(sum_eta_sq(spec, 99) == 100.0);
}

TEST_CASE("wsd schedule hits the frozen reference values") {
  const auto spec = make_wsd(1.0, 12, 4, 8);
  CHECK(eta(spec, 0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(eta(spec, 2) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(eta(spec, 4) == 1.0);
  CHECK(eta(spec, 8) == 1.0);
  CHECK(eta(spec, 10) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(eta(spec, 12) == doctest::Approx(0.2).epsilon(1e-15));
  // Total multiplier mass and its square, against hand-computed values.
  CHECK(sum_eta(spec, 12) == 9.0);  // exact by construction
  CHECK(sum_eta_sq(spec, 12) == doctest::Approx(7.4).epsilon(1e-14));
  // Warmup prefix collapses to (T_w + 2)/2.
  CHECK(sum_eta(spec, 4) == 3.0);
}

TEST_CASE("wsd closed-form sums equal direct summation") {
  check_sums_against_direct(make_wsd(1.0, 12, 4, 8));
  check_sums_against_direct(make_wsd(1.0, 10, 0, 10));   // no flat phase edges
  check_sums_against_direct(make_wsd(1.0, 10, 3, 3));    // empty stable phase
  check_sums_against_direct(make_wsd(1.0, 5, 5, 5));     // warmup only
  check_sums_against_direct(make_wsd(1.0, 10000, 700, 9000));
}

TEST_CASE("wsd total multiplier mass is exact at the horizon") {
  struct Row {
    std::uint64_t T, Tw, Tc;
  };
  for (const Row r : {Row{1, 0, 0}, Row{12, 4, 8}, Row{10, 3, 3},
                      Row{10, 0, 10}, Row{5, 5, 5}, Row{10000, 700, 9000},
                      Row{999983, 49999, 749983}}) {
    const auto spec = make_wsd(1.0, r.T, r.Tw, r.Tc);
    const double expect =
        static_cast<double>(r.T + r.Tc - r.Tw + 2) / 2.0;
    CHECK(sum_eta(spec, r.T) == expect);
    // The squared mass never exceeds two thirds of the linear mass's scale.
    CHECK(sum_eta_sq(spec, r.T) <=
          (2.0 / 3.0) * static_cast<double>(r.T + r.Tc - r.Tw + 2));
  }
}

TEST_CASE("cosine schedule warms up, decays, and ends exactly at zero") {
  const auto spec = make_cosine(1.0, 100, 10);
  CHECK(eta(spec, 0) == doctest::Approx(1.0 / 11.0).epsilon(1e-15));
  CHECK(eta(spec, 10) == 1.0);
  CHECK(eta(spec, 100) == 0.0);
  for (std::uint64_t t = 11; t <= 100; ++t) {
    CHECK(eta(spec, t) < eta(spec, t - 1));
    CHECK(eta(spec, t) >= 0.0);
  }
  check_sums_against_direct(spec);
  // Midpoint of the cosine arc sits at one half.
  CHECK(eta(spec, 55) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("constant-then-diverge grows linearly past the onset") {
  const auto spec = make_constant_then_diverge(1.0, 50, 20, 0.25);
  CHECK(eta(spec, 0) == 1.0);
  CHECK(eta(spec, 20) == 1.0);
  CHECK(eta(spec, 21) == 1.25);
  CHECK(eta(spec, 40) == 6.0);
  check_sums_against_direct(spec);
  check_sums_against_direct(make_constant_then_diverge(1.0, 200, 0, 0.5));
  check_sums_against_direct(make_constant_then_diverge(1.0, 200, 200, 0.5));
}

TEST_CASE("schedule construction rejects inconsistent parameters") {
  CHECK_THROWS_AS(make_constant(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_constant(-1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_wsd(1.0, 10, 6, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_wsd(1.0, 10, 2, 11), std::invalid_argument);
  CHECK_THROWS_AS(make_cosine(1.0, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_constant_then_diverge(1.0, 10, 4, -0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_wsd_frac(1.0, 10, 0.7, 0.7), std::invalid_argument);
}

TEST_CASE("wsd_frac places the phase bounds by flooring") {
  const auto spec = make_wsd_frac(0.5, 100, 0.05, 0.25);
  CHECK(spec.warmup_end == 5);
  CHECK(spec.cooldown_start == 75);
  CHECK(spec.base_lr == 0.5);
}

TEST_CASE("evaluating past the horizon throws") {
  const auto spec = make_constant(1.0, 10);
  CHECK_THROWS_AS(eta(spec, 11), std::out_of_range);
  CHECK_THROWS_AS(sum_eta(spec, 11), std::out_of_range);
  CHECK_THROWS_AS(sum_eta_sq(spec, 11), std::out_of_range);
}

TEST_CASE("gamma scales eta by the base rate") {
  const auto spec = make_wsd(0.05, 12, 4, 8);
  for (std::uint64_t t = 0; t <= 12; ++t) {
    CHECK(gamma(spec, t) == 0.05 * eta(spec, t));
  }
}

TEST_CASE("prefix sums accumulate and bounds-check") {
  PrefixSums sums;
  CHECK(sums.size() == 0);
  sums.push(1.0);
  sums.push(0.5);
  sums.push(0.0);  // zero values are allowed (cosine horizon)
  CHECK(sums.size() == 3);
  CHECK(sums.value(1) == 0.5);
  CHECK(sums.s1(2) == 1.5);
  CHECK(sums.s2(2) == 1.25);
  CHECK_THROWS_AS(sums.value(3), std::out_of_range);
  CHECK_THROWS_AS(sums.s1(3), std::out_of_range);
  CHECK_THROWS_AS(sums.push(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(sums.push(std::nan("")), std::invalid_argument);
}
