#include "schedfree/momentum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace schedfree {

namespace {

void check_positive_rates(std::span<const double> vals, const char* who) {
  for (double v : vals) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::invalid_argument(std::string(who) +
                                  ": rates must be positive and finite");
    }
  }
}

void check_lambda0(double lambda0, const char* who) {
  if (!std::isfinite(lambda0) || lambda0 < 0.0) {
    throw std::invalid_argument(std::string(who) +
                                ": lambda_0 must be nonnegative and finite");
  }
}

}  // namespace

void momentum_step(std::span<double> x, std::span<double> m,
                   std::span<const double> g, double alpha, double lambda) {
  if (x.size() != m.size() || x.size() != g.size()) {
    throw std::invalid_argument("momentum_step: operand dimensions disagree");
  }
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument("momentum_step: lambda must be nonnegative");
  }
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw std::invalid_argument(
        "momentum_step: alpha must be positive and finite");
  }
  const double keep = lambda / (1.0 + lambda);
  const double mix = 1.0 / (1.0 + lambda);
  for (std::size_t i = 0; i < x.size(); ++i) {
    m[i] = keep * m[i] + mix * g[i];
    x[i] -= alpha * m[i];
  }
}

MomentumParams convert_pa_to_momentum(std::span<const double> gammas,
                                      double lambda0) {
  if (gammas.size() < 2) {
    throw std::invalid_argument(
        "convert_pa_to_momentum: need at least gamma_0 and gamma_1");
  }
  check_positive_rates(gammas, "convert_pa_to_momentum");
  check_lambda0(lambda0, "convert_pa_to_momentum");

  const std::size_t T = gammas.size() - 1;  // number of momentum steps
  MomentumParams out;
  out.alpha.reserve(T);
  out.lambda.reserve(T);

  out.lambda.push_back(lambda0);
  out.alpha.push_back(gammas[0] * gammas[1] * (1.0 + lambda0) /
                      (gammas[0] + gammas[1]));

  // S_prev = sum_{i<t} gamma_i, S_next = sum_{i<=t+1} gamma_i.
  double s_prev = gammas[0];
  double s_next = gammas[0] + gammas[1];
  for (std::size_t t = 1; t < T; ++t) {
    s_next += gammas[t + 1];
    const double a_prev = out.alpha.back();
    out.lambda.push_back(a_prev * s_prev / (gammas[t] * gammas[t]));
    out.alpha.push_back(a_prev * (gammas[t + 1] / gammas[t]) *
                            (s_prev / s_next) +
                        gammas[t] * gammas[t + 1] / s_next);
    s_prev += gammas[t];
  }
  return out;
}

AveragingParams convert_momentum_to_pa(std::span<const double> alphas,
                                       double lambda0, double gamma0) {
  if (alphas.empty()) {
    throw std::invalid_argument(
        "convert_momentum_to_pa: need at least alpha_0");
  }
  check_positive_rates(alphas, "convert_momentum_to_pa");
  check_lambda0(lambda0, "convert_momentum_to_pa");
  if (!std::isfinite(gamma0) || gamma0 <= 0.0) {
    throw std::invalid_argument(
        "convert_momentum_to_pa: gamma_0 must be positive and finite");
  }

  const double init_margin = (1.0 + lambda0) * gamma0 - alphas[0];
  if (!(init_margin > 0.0)) {
    throw std::invalid_argument(
        "convert_momentum_to_pa: rejected, (1+lambda_0) gamma_0 must exceed "
        "alpha_0");
  }

  const std::size_t T = alphas.size();
  AveragingParams out;
  out.gamma.reserve(T + 1);
  out.lambda.reserve(T);
  out.gamma.push_back(gamma0);
  out.lambda.push_back(lambda0);
  out.gamma.push_back(alphas[0] * gamma0 / init_margin);

  double s_prev = gamma0;  // sum_{i<t} gamma_i entering iteration t
  for (std::size_t t = 1; t < T; ++t) {
    const double gamma_t = out.gamma[t];
    const double ratio = alphas[t - 1] / gamma_t;
    out.lambda.push_back(ratio * s_prev / gamma_t);
    const double feasibility_margin = ratio * s_prev + gamma_t - alphas[t];
    if (!(feasibility_margin > 0.0)) {
      throw std::invalid_argument(
          "convert_momentum_to_pa: feasibility condition fails at step t=" +
          std::to_string(t));
    }
    const double s_t = s_prev + gamma_t;  // sum_{i<=t}
    out.gamma.push_back(alphas[t] * s_t / feasibility_margin);
    s_prev = s_t;
  }
  return out;
}

double check_equivalence(std::span<const double> gammas, double lambda0,
                         const ProblemOracle& oracle, const Point& x0,
                         std::uint64_t T, std::uint64_t seed) {
  if (T + 1 > gammas.size()) {
    throw std::invalid_argument(
        "check_equivalence: gamma schedule shorter than T+1");
  }
  if (x0.size() != oracle.dim()) {
    throw std::invalid_argument(
        "check_equivalence: x0 dimension does not match oracle");
  }
  const MomentumParams params = convert_pa_to_momentum(gammas, lambda0);

  const std::size_t dim = oracle.dim();
  // Primal averaging side: gradients at x itself (beta = 1).
  Point x_avg = x0;
  Point z = x0;
  // Momentum side.
  Point x_mom = x0;
  Point m(dim);

  Point grad(dim);
  double s1 = gammas[0];
  double deviation = 0.0;
  for (std::uint64_t t = 0; t < T; ++t) {
    const BatchId zeta = oracle.sample(t, seed);

    oracle.batch_grad(x_avg.span(), zeta, grad.span());
    simd::axpy(z.span(), -gammas[t], grad.span());
    s1 += gammas[t + 1];
    const double c = gammas[t + 1] / s1;
    simd::lerp(x_avg.span(), x_avg.span(), z.span(), c);

    oracle.batch_grad(x_mom.span(), zeta, grad.span());
    momentum_step(x_mom.span(), m.span(), grad.span(), params.alpha[t],
                  params.lambda[t]);

    for (std::size_t i = 0; i < dim; ++i) {
      deviation = std::max(deviation, std::abs(x_avg[i] - x_mom[i]));
    }
  }
  return deviation;
}

}  // namespace schedfree
