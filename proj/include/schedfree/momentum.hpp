// Momentum form of the averaging iteration and the parameter conversions
// between the two views.
//
//   m_t     = lambda_t/(1+lambda_t) m_{t-1} + 1/(1+lambda_t) g_t
//   x_{t+1} = x_t - alpha_t m_t
//
// A primal-averaging run (beta = 1 with running-average weights) over a
// positive rate sequence gamma_0..gamma_T maps to unique (alpha_t,
// lambda_t), and back, through prefix-sum recursions; the translated runs
// produce the same x iterates for any gradient stream. Both conversions are
// pure whole-horizon transforms; the inverse direction enforces the
// feasibility condition alpha_t < (alpha_{t-1}/gamma_t) sum_{i<t} gamma_i
// + gamma_t at every step and reports the first violation.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "schedfree/core.hpp"

namespace schedfree {

struct MomentumParams {
  std::vector<double> alpha;   // stepsizes, all positive
  std::vector<double> lambda;  // momentum weights, all nonnegative
};

/// Primal-averaging parameters recovered from a momentum description.
struct AveragingParams {
  std::vector<double> gamma;   // gamma_0..gamma_T (one longer than lambda)
  std::vector<double> lambda;  // lambda_0..lambda_{T-1}
};

/// One momentum step, in place: m holds m_{t-1} on entry and m_t on exit,
/// x becomes x_{t+1}. Throws std::invalid_argument when lambda is negative
/// or alpha is not positive and finite.
void momentum_step(std::span<double> x, std::span<double> m,
                   std::span<const double> g, double alpha, double lambda);

/// Maps gamma_0..gamma_T (at least two entries, all positive) and lambda_0
/// to the momentum parameters alpha_0..alpha_{T-1}, lambda_0..lambda_{T-1}.
MomentumParams convert_pa_to_momentum(std::span<const double> gammas,
                                      double lambda0);

/// Inverse map from alpha_0..alpha_{T-1} (all positive), lambda_0 and
/// gamma_0 to gamma_0..gamma_T plus the implied lambda sequence. Requires
/// (1+lambda_0) gamma_0 > alpha_0 and the per-step feasibility condition;
/// violations throw std::invalid_argument naming the step.
AveragingParams convert_momentum_to_pa(std::span<const double> alphas,
                                       double lambda0, double gamma0);

/// Runs primal averaging (beta = 1, running-average weights, never forming
/// any 1/(1-beta) quantity) on the gamma schedule and the momentum method on
/// the converted parameters, against the same oracle and seed, for T steps
/// (T+1 <= gammas.size()); returns the largest coordinate deviation
/// max_t ||x_t^avg - x_t^mom||_inf.
double check_equivalence(std::span<const double> gammas, double lambda0,
                         const ProblemOracle& oracle, const Point& x0,
                         std::uint64_t T, std::uint64_t seed = 0);

}  // namespace schedfree
