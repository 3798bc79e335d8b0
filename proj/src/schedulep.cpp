#include "schedfree/schedulep.hpp"

#include <cmath>
#include <stdexcept>

#include "schedfree/bounds.hpp"
#include "schedfree/rng.hpp"

namespace schedfree {

namespace {

constexpr std::uint64_t kFstarNoiseTag = 0x06;

void check_sizes(std::span<const double> g, std::span<const double> a,
                 std::span<const double> b, const char* who) {
  if (g.size() != a.size() || g.size() != b.size()) {
    throw std::invalid_argument(std::string(who) +
                                ": operand dimensions disagree");
  }
}

double positive_part(double v) { return v > 0.0 ? v : 0.0; }

}  // namespace

void validate(const PolyakConfig& cfg) {
  if (!std::isfinite(cfg.beta) || cfg.beta < 0.0 || cfg.beta > 1.0) {
    throw std::invalid_argument("PolyakConfig: beta must lie in [0, 1]");
  }
  if (std::isnan(cfg.gamma_max) || cfg.gamma_max < 0.0) {
    throw std::invalid_argument(
        "PolyakConfig: gamma_max must be nonnegative (or infinite)");
  }
  if (!std::isfinite(cfg.misspecification_noise) ||
      cfg.misspecification_noise < 0.0) {
    throw std::invalid_argument(
        "PolyakConfig: misspecification_noise must be nonnegative and finite");
  }
}

DiagonalPreconditioner DiagonalPreconditioner::adam(std::size_t dim,
                                                    double ema_decay,
                                                    double eps) {
  if (dim == 0) {
    throw std::invalid_argument("DiagonalPreconditioner: dim must be >= 1");
  }
  if (!std::isfinite(ema_decay) || ema_decay < 0.0 || ema_decay >= 1.0) {
    throw std::invalid_argument(
        "DiagonalPreconditioner: ema_decay must lie in [0, 1)");
  }
  if (!std::isfinite(eps) || eps <= 0.0) {
    throw std::invalid_argument(
        "DiagonalPreconditioner: eps must be positive and finite");
  }
  DiagonalPreconditioner p;
  p.v_.assign(dim, 0.0);
  p.d_.assign(dim, eps);  // before any observation the diagonal is the floor
  p.ema_decay_ = ema_decay;
  p.eps_ = eps;
  return p;
}

DiagonalPreconditioner DiagonalPreconditioner::frozen_identity(
    std::size_t dim) {
  return with_diagonal(std::vector<double>(dim, 1.0));
}

DiagonalPreconditioner DiagonalPreconditioner::with_diagonal(
    std::vector<double> diag) {
  if (diag.empty()) {
    throw std::invalid_argument("DiagonalPreconditioner: dim must be >= 1");
  }
  for (double d : diag) {
    if (!std::isfinite(d) || d <= 0.0) {
      throw std::invalid_argument(
          "DiagonalPreconditioner: diagonal entries must be positive and "
          "finite");
    }
  }
  DiagonalPreconditioner p;
  p.d_ = std::move(diag);
  p.frozen_ = true;
  return p;
}

void DiagonalPreconditioner::observe(std::span<const double> g) {
  if (frozen_) {
    return;
  }
  if (g.size() != d_.size()) {
    throw std::invalid_argument(
        "DiagonalPreconditioner: gradient dimension disagrees");
  }
  observations_ += 1;
  const double decay = ema_decay_;
  // Bias correction 1 - decay^count, computed stably for long runs.
  const double correction =
      -std::expm1(static_cast<double>(observations_) * std::log(decay));
  for (std::size_t i = 0; i < d_.size(); ++i) {
    v_[i] = decay * v_[i] + (1.0 - decay) * g[i] * g[i];
    d_[i] = std::sqrt(v_[i] / correction) + eps_;
  }
}

double polyak_stepsize(double fy, double fstar, std::span<const double> g,
                       std::span<const double> z_prev,
                       std::span<const double> x, double beta) {
  check_sizes(g, z_prev, x, "polyak_stepsize");
  const double denom = simd::sumsq(g);
  if (denom == 0.0) {
    return 0.0;
  }
  const double numer =
      positive_part(fy - fstar + beta * simd::dot_diff(g, z_prev, x));
  return numer / denom;
}

double polyak_stepsize_practical(double fy, double fstar,
                                 std::span<const double> g,
                                 std::span<const double> z_prev,
                                 std::span<const double> y) {
  check_sizes(g, z_prev, y, "polyak_stepsize_practical");
  const double denom = simd::sumsq(g);
  if (denom == 0.0) {
    return 0.0;
  }
  const double numer = positive_part(fy - fstar + simd::dot_diff(g, z_prev, y));
  return numer / denom;
}

double capped(double tau, double gamma_max) {
  if (tau < 0.0) {
    throw std::invalid_argument("capped: tau must be nonnegative");
  }
  return std::min(gamma_max, tau);
}

double precond_polyak_stepsize(double fy, double fstar,
                               std::span<const double> g,
                               std::span<const double> z_prev,
                               std::span<const double> x, double beta,
                               const DiagonalPreconditioner& precond) {
  check_sizes(g, z_prev, x, "precond_polyak_stepsize");
  const std::span<const double> d = precond.diag();
  if (d.size() != g.size()) {
    throw std::invalid_argument(
        "precond_polyak_stepsize: preconditioner dimension disagrees");
  }
  for (double di : d) {
    if (!(di > 0.0)) {
      throw std::invalid_argument(
          "precond_polyak_stepsize: diagonal entries must be positive");
    }
  }
  const double denom = simd::sumsq_over(g, d);
  if (denom == 0.0) {
    return 0.0;
  }
  const double numer =
      positive_part(fy - fstar + beta * simd::dot_diff(g, z_prev, x));
  return numer / denom;
}

namespace {

std::vector<TraceRecord> run_impl(const PolyakConfig& cfg,
                                  const ProblemOracle& oracle, const Point& x0,
                                  DiagonalPreconditioner* precond) {
  validate(cfg);
  const std::size_t dim = oracle.dim();
  if (x0.size() != dim) {
    throw std::invalid_argument(
        "schedulep_run: x0 dimension does not match oracle");
  }
  if (precond != nullptr && precond->dim() != dim) {
    throw std::invalid_argument(
        "schedulep_run: preconditioner dimension does not match oracle");
  }

  const OracleMetadata meta = oracle.metadata();
  const std::uint64_t noise_seed = rng::hash2(cfg.seed, kFstarNoiseTag);

  std::vector<TraceRecord> trace;
  trace.reserve(cfg.steps);
  Point x = x0;
  Point z = x0;
  Point y(dim);
  Point grad(dim);
  for (std::uint64_t t = 0; t < cfg.steps; ++t) {
    simd::lerp(y.span(), z.span(), x.span(), cfg.beta);
    const BatchId zeta = oracle.sample(t, cfg.seed);
    const double fy = oracle.batch_loss_grad(y.span(), zeta, grad.span());
    const double grad_norm = std::sqrt(simd::sumsq(grad.span()));
    if (!std::isfinite(grad_norm) || !std::isfinite(fy)) {
      throw diverged_error(t);
    }

    double fstar = oracle.fstar_batch(zeta);
    if (cfg.misspecification_noise > 0.0) {
      fstar += rng::uniform_symmetric(noise_seed, zeta,
                                      cfg.misspecification_noise);
    }

    double tau;
    if (precond != nullptr) {
      precond->observe(grad.span());
      tau = precond_polyak_stepsize(fy, fstar, grad.span(), z.span(), x.span(),
                                    cfg.beta, *precond);
    } else {
      tau = polyak_stepsize(fy, fstar, grad.span(), z.span(), x.span(),
                            cfg.beta);
    }
    if (!std::isfinite(tau)) {
      throw diverged_error(t);
    }
    const double gamma = capped(tau, cfg.gamma_max);

    if (precond != nullptr) {
      simd::axpy_over(z.span(), -gamma, grad.span(), precond->diag());
    } else {
      simd::axpy(z.span(), -gamma, grad.span());
    }
    const double c = 1.0 / static_cast<double>(t + 2);
    simd::lerp(x.span(), x.span(), z.span(), c);

    const double loss = oracle.full_loss(x.span());
    if (!std::isfinite(loss)) {
      throw diverged_error(t);
    }

    TraceRecord row;
    row.t = t;
    row.eta = 1.0;
    row.gamma = gamma;
    row.c = c;
    row.loss = loss;
    row.grad_norm = grad_norm;
    row.stepsize_raw = tau;
    if (cfg.track_bound) {
      row.bound = theorem2_bound(meta.grad_bound, meta.dist0, t + 1);
    }
    trace.push_back(row);
  }
  return trace;
}

}  // namespace

std::vector<TraceRecord> schedulep_run(const PolyakConfig& cfg,
                                       const ProblemOracle& oracle,
                                       const Point& x0,
                                       DiagonalPreconditioner* precond) {
  return run_impl(cfg, oracle, x0, precond);
}

std::vector<TraceRecord> schedulep_run(const PolyakConfig& cfg,
                                       const ProblemOracle& oracle,
                                       DiagonalPreconditioner* precond) {
  return run_impl(cfg, oracle, oracle.start(), precond);
}

}  // namespace schedfree
