#include "schedfree/problems.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "schedfree/rng.hpp"

namespace schedfree {

namespace {

// Independent rng stream tags so datasets, solutions, labels, and teacher
// noise never share draws.
constexpr std::uint64_t kRowTag = 0x01;
constexpr std::uint64_t kSolutionTag = 0x02;
constexpr std::uint64_t kLabelTag = 0x03;
constexpr std::uint64_t kTeacherTag = 0x04;
constexpr std::uint64_t kFactorTag = 0x05;

constexpr double kLogisticReg = 1e-2;

void require_field(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double softplus(double z) {
  // log(1 + exp(z)) without overflow for large z.
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z))
                  : std::exp(z) / (1.0 + std::exp(z));
}

// Plain sequential helpers for data generation and ground-truth values;
// these deliberately avoid the dispatched kernels so problem data does not
// depend on which vector path is active.
double plain_dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double plain_norm(std::span<const double> a) {
  double s = 0.0;
  for (const double v : a) s += v * v;
  return std::sqrt(s);
}

// Row-major dataset with geometrically graded row scales.
struct Dataset {
  std::size_t d = 0, n = 0;
  std::vector<double> rows;  // n * d

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(rows).subspan(i * d, d);
  }
};

Dataset generate_rows(const ProblemSpec& spec) {
  Dataset ds;
  ds.d = spec.dim;
  ds.n = spec.n;
  ds.rows.resize(ds.n * ds.d);
  std::uint64_t state = rng::hash2(spec.seed, kRowTag);
  for (double& v : ds.rows) v = rng::normal(state);
  // Row i is scaled by cond^(-i/(n-1)); the first row keeps scale 1.
  for (std::size_t i = 0; i < ds.n; ++i) {
    const double expo =
        ds.n == 1 ? 0.0
                  : static_cast<double>(i) / static_cast<double>(ds.n - 1);
    const double s = std::pow(spec.cond, -expo);
    for (std::size_t j = 0; j < ds.d; ++j) ds.rows[i * ds.d + j] *= s;
  }
  return ds;
}

Point planted_solution(const ProblemSpec& spec) {
  Point x(spec.dim);
  std::uint64_t state = rng::hash2(spec.seed, kSolutionTag);
  for (auto& v : x.coords) v = spec.scale * rng::normal(state);
  return x;
}

// Shared plumbing: uniform batch sampling, mean-of-batches full loss,
// metadata/start storage.
class OracleBase : public ProblemOracle {
 public:
  std::size_t dim() const override { return d_; }
  std::size_t num_batches() const override { return n_; }

  BatchId sample(std::uint64_t t, std::uint64_t seed) const override {
    return rng::hash2(seed, t) % n_;
  }

  double batch_loss_grad(std::span<const double> p, BatchId b,
                         std::span<double> out) const override {
    batch_grad(p, b, out);
    return batch_loss(p, b);
  }

  double full_loss(std::span<const double> p) const override {
    double s = 0.0;
    for (std::size_t b = 0; b < n_; ++b) s += batch_loss(p, b);
    return s / static_cast<double>(n_);
  }

  const OracleMetadata& metadata() const override { return meta_; }
  const Point& start() const override { return x0_; }

 protected:
  void check_batch(BatchId b) const {
    if (b >= n_) {
      throw std::out_of_range("batch id " + std::to_string(b) +
                              " out of range (pool size " +
                              std::to_string(n_) + ")");
    }
  }

  std::size_t d_ = 0, n_ = 0;
  OracleMetadata meta_;
  Point x0_;
};

// 0.5 * factor_b * sum_j h_j (x_j - x*_j)^2 with a batch-independent
// minimizer, so every batch (and the mean) bottoms out at exactly zero.
class QuadraticOracle final : public OracleBase {
 public:
  explicit QuadraticOracle(const ProblemSpec& spec) {
    d_ = spec.dim;
    n_ = spec.n;
    h_.resize(d_);
    for (std::size_t j = 0; j < d_; ++j) {
      const double expo =
          d_ == 1 ? 0.0
                  : static_cast<double>(j) / static_cast<double>(d_ - 1);
      h_[j] = spec.scale * std::pow(spec.cond, -expo);
    }
    factors_.resize(n_);
    const std::uint64_t fseed = rng::hash2(spec.seed, kFactorTag);
    const double jitter = std::min(spec.noise, 0.9);
    for (std::size_t b = 0; b < n_; ++b) {
      factors_[b] = 1.0 + rng::uniform_symmetric(fseed, b, jitter);
    }
    meta_.x_star = Point(std::vector<double>(d_, 1.0));
    meta_.fstar = 0.0;
    x0_ = Point(d_, 0.0);
    meta_.dist0 = std::sqrt(static_cast<double>(d_));
    const double hmax = *std::max_element(h_.begin(), h_.end());
    const double fmax = *std::max_element(factors_.begin(), factors_.end());
    meta_.grad_bound = fmax * hmax * meta_.dist0;
  }

  double batch_loss(std::span<const double> p, BatchId b) const override {
    check_batch(b);
    double s = 0.0;
    for (std::size_t j = 0; j < d_; ++j) {
      const double delta = p[j] - meta_.x_star[j];
      s += h_[j] * delta * delta;
    }
    return 0.5 * factors_[b] * s;
  }

  void batch_grad(std::span<const double> p, BatchId b,
                  std::span<double> out) const override {
    check_batch(b);
    for (std::size_t j = 0; j < d_; ++j) {
      out[j] = factors_[b] * h_[j] * (p[j] - meta_.x_star[j]);
    }
  }

  double fstar_batch(BatchId b) const override {
    check_batch(b);
    return 0.0;
  }

 private:
  std::vector<double> h_;
  std::vector<double> factors_;
};

// Rows |a_i' x - b_i| with b = A x*, so every batch is minimized (at zero)
// on the planted solution's hyperplane. G = max row norm is the exact
// Lipschitz constant of every batch, holding everywhere.
class AbsOracle final : public OracleBase {
 public:
  explicit AbsOracle(const ProblemSpec& spec) {
    d_ = spec.dim;
    n_ = spec.n;
    if (d_ == 1 && n_ == 1) {
      // The canonical |x| instance: unit row, minimizer 0, start 1.
      ds_.d = 1;
      ds_.n = 1;
      ds_.rows = {1.0};
      meta_.x_star = Point(std::vector<double>{0.0});
      x0_ = Point(std::vector<double>{1.0});
    } else {
      ds_ = generate_rows(spec);
      meta_.x_star = planted_solution(spec);
      x0_ = Point(d_, 0.0);
    }
    rhs_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      rhs_[i] = plain_dot(ds_.row(i), meta_.x_star.span());
    }
    meta_.fstar = 0.0;
    meta_.dist0 = distance_plain(x0_.span(), meta_.x_star.span());
    double gmax = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      gmax = std::max(gmax, plain_norm(ds_.row(i)));
    }
    meta_.grad_bound = gmax;
  }

  double batch_loss(std::span<const double> p, BatchId b) const override {
    check_batch(b);
    return std::abs(plain_dot(ds_.row(b), p) - rhs_[b]);
  }

  void batch_grad(std::span<const double> p, BatchId b,
                  std::span<double> out) const override {
    check_batch(b);
    const double r = plain_dot(ds_.row(b), p) - rhs_[b];
    const double s = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
    const auto row = ds_.row(b);
    for (std::size_t j = 0; j < d_; ++j) out[j] = s * row[j];
  }

  double fstar_batch(BatchId b) const override {
    check_batch(b);
    return 0.0;
  }

 private:
  static double distance_plain(std::span<const double> a,
                               std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double diff = a[i] - b[i];
      s += diff * diff;
    }
    return std::sqrt(s);
  }

  Dataset ds_;
  std::vector<double> rhs_;
};

// Rows 0.5 (a_i' x - b_i)^2 with b = A x* (a consistent system): every
// batch optimum is exactly zero. G is the ball-restricted bound
// max_i ||a_i||^2 * dist0, attained along the worst row's direction.
class LeastSquaresOracle : public OracleBase {
 public:
  explicit LeastSquaresOracle(const ProblemSpec& spec) {
    d_ = spec.dim;
    n_ = spec.n;
    ds_ = generate_rows(spec);
    meta_.x_star = planted_solution(spec);
    x0_ = Point(d_, 0.0);
    rhs_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      rhs_[i] = plain_dot(ds_.row(i), meta_.x_star.span());
    }
    meta_.fstar = 0.0;
    meta_.dist0 = plain_norm(meta_.x_star.span());
    double nsq_max = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double nrm = plain_norm(ds_.row(i));
      nsq_max = std::max(nsq_max, nrm * nrm);
    }
    meta_.grad_bound = nsq_max * meta_.dist0;
  }

  double batch_loss(std::span<const double> p, BatchId b) const override {
    check_batch(b);
    const double r = plain_dot(ds_.row(b), p) - rhs_[b];
    return 0.5 * r * r;
  }

  void batch_grad(std::span<const double> p, BatchId b,
                  std::span<double> out) const override {
    check_batch(b);
    const double r = plain_dot(ds_.row(b), p) - rhs_[b];
    const auto row = ds_.row(b);
    for (std::size_t j = 0; j < d_; ++j) out[j] = r * row[j];
  }

  double fstar_batch(BatchId b) const override {
    check_batch(b);
    return 0.0;
  }

 private:
  Dataset ds_;
  std::vector<double> rhs_;
};

// least_squares with a deliberately imperfect per-batch target: fstar_batch
// reports 0 + noise_b instead of the true 0. Metadata keeps the truth; the
// misreporting is confined to fstar_batch, which is exactly where an
// approximate target oracle would feed an optimizer.
class TeacherOracle final : public LeastSquaresOracle {
 public:
  explicit TeacherOracle(const ProblemSpec& spec)
      : LeastSquaresOracle(spec),
        noise_seed_(rng::hash2(spec.seed, kTeacherTag)),
        noise_(spec.noise) {}

  double fstar_batch(BatchId b) const override {
    check_batch(b);
    return rng::uniform_symmetric(noise_seed_, b, noise_);
  }

 private:
  std::uint64_t noise_seed_;
  double noise_;
};

// Regularized logistic rows: softplus(-y_i a_i' x) + (reg/2) ||x||^2. The
// regularizer sits in every batch, so the mean keeps it too. No closed-form
// minimizer; build runs a full Newton solve to gradient norm <= 1e-12 and
// stores the result as ground truth. Per-batch optima reduce to a 1-D
// problem along the row direction, solved the same way.
class LogisticOracle final : public OracleBase {
 public:
  explicit LogisticOracle(const ProblemSpec& spec) {
    d_ = spec.dim;
    n_ = spec.n;
    ds_ = generate_rows(spec);
    x0_ = Point(d_, 0.0);

    // Labels: sign of a noisy margin against a hidden direction.
    labels_.resize(n_);
    std::uint64_t lstate = rng::hash2(spec.seed, kLabelTag);
    std::vector<double> w(d_);
    for (auto& v : w) v = rng::normal(lstate);
    for (std::size_t i = 0; i < n_; ++i) {
      const double m = plain_dot(ds_.row(i), w) + 0.1 * rng::normal(lstate);
      labels_[i] = m >= 0.0 ? 1.0 : -1.0;
    }

    meta_.x_star = newton_solve();
    meta_.fstar = full_loss(meta_.x_star.span());
    meta_.dist0 = plain_norm(meta_.x_star.span());

    double amax = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      amax = std::max(amax, plain_norm(ds_.row(i)));
    }
    // On the ball around x*: ||grad|| <= ||a|| * 1 + reg * ||x||.
    meta_.grad_bound =
        amax + kLogisticReg * (plain_norm(meta_.x_star.span()) + meta_.dist0);

    fstar_batch_.resize(n_);
    for (std::size_t b = 0; b < n_; ++b) fstar_batch_[b] = solve_batch(b);
  }

  double batch_loss(std::span<const double> p, BatchId b) const override {
    check_batch(b);
    const double m = labels_[b] * plain_dot(ds_.row(b), p);
    double reg = 0.0;
    for (const double v : p) reg += v * v;
    return softplus(-m) + 0.5 * kLogisticReg * reg;
  }

  void batch_grad(std::span<const double> p, BatchId b,
                  std::span<double> out) const override {
    check_batch(b);
    const double y = labels_[b];
    const double m = y * plain_dot(ds_.row(b), p);
    const double s = sigmoid(-m);
    const auto row = ds_.row(b);
    for (std::size_t j = 0; j < d_; ++j) {
      out[j] = -y * s * row[j] + kLogisticReg * p[j];
    }
  }

  double fstar_batch(BatchId b) const override {
    check_batch(b);
    return fstar_batch_[b];
  }

 private:
  Point newton_solve() const {
    const auto nd = static_cast<Eigen::Index>(d_);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(nd);
    Eigen::VectorXd g(nd);
    Eigen::MatrixXd H(nd, nd);
    for (int it = 0; it < 100; ++it) {
      g.setZero();
      H.setZero();
      for (std::size_t i = 0; i < n_; ++i) {
        const auto row = ds_.row(i);
        Eigen::Map<const Eigen::VectorXd> a(row.data(), nd);
        const double y = labels_[i];
        const double m = y * a.dot(x);
        const double s = sigmoid(-m);
        g.noalias() += (-y * s) * a;
        H.noalias() += (s * (1.0 - s)) * (a * a.transpose());
      }
      const double inv_n = 1.0 / static_cast<double>(n_);
      g = inv_n * g + kLogisticReg * x;
      H = inv_n * H;
      H.diagonal().array() += kLogisticReg;
      if (g.norm() <= 1e-12) break;
      x -= H.llt().solve(g);
    }
    if (g_norm_at(x) > 1e-12) {
      throw std::runtime_error(
          "logistic reference solve failed to reach tolerance");
    }
    return Point(std::vector<double>(x.data(), x.data() + d_));
  }

  double g_norm_at(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
    for (std::size_t i = 0; i < n_; ++i) {
      const auto row = ds_.row(i);
      Eigen::Map<const Eigen::VectorXd> a(row.data(), x.size());
      const double y = labels_[i];
      const double s = sigmoid(-y * a.dot(x));
      g.noalias() += (-y * s) * a;
    }
    g = g / static_cast<double>(n_) + kLogisticReg * x;
    return g.norm();
  }

  // min over x of one batch: the optimum lies along y*a, reducing to a 1-D
  // Newton solve in the coefficient s with x = s * y * a.
  double solve_batch(std::size_t b) const {
    const auto row = ds_.row(b);
    double q = 0.0;
    for (const double v : row) q += v * v;
    if (q == 0.0) return softplus(0.0);  // loss is constant log 2 at x = 0
    double s = 0.0;
    for (int it = 0; it < 80; ++it) {
      const double sig = sigmoid(-s * q);
      const double g1 = q * (kLogisticReg * s - sig);
      const double h1 = q * (kLogisticReg + q * sig * (1.0 - sig));
      const double step = g1 / h1;
      s -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(s))) break;
    }
    return softplus(-s * q) + 0.5 * kLogisticReg * s * s * q;
  }

  Dataset ds_;
  std::vector<double> labels_;
  std::vector<double> fstar_batch_;
};

}  // namespace

std::unique_ptr<ProblemOracle> build(const ProblemSpec& spec) {
  require_field(spec.dim >= 1, "problem spec: dim must be >= 1");
  require_field(spec.n >= 1, "problem spec: n must be >= 1");
  require_field(std::isfinite(spec.cond) && spec.cond >= 1.0,
                "problem spec: cond must be >= 1");
  require_field(std::isfinite(spec.scale) && spec.scale > 0.0,
                "problem spec: scale must be positive");
  require_field(std::isfinite(spec.noise) && spec.noise >= 0.0,
                "problem spec: noise must be nonnegative");
  switch (spec.kind) {
    case ProblemKind::quadratic:
      return std::make_unique<QuadraticOracle>(spec);
    case ProblemKind::abs:
      return std::make_unique<AbsOracle>(spec);
    case ProblemKind::least_squares:
      return std::make_unique<LeastSquaresOracle>(spec);
    case ProblemKind::logistic:
      return std::make_unique<LogisticOracle>(spec);
    case ProblemKind::teacher:
      return std::make_unique<TeacherOracle>(spec);
  }
  throw std::logic_error("unreachable problem kind");
}

ProblemSpec preset(std::string_view name) {
  if (name == "abs1d") return {ProblemKind::abs, 1, 1, 1.0, 1.0, 0.0, 1};
  if (name == "quad1d") return {ProblemKind::quadratic, 1, 1, 1.0, 1.0, 0.0, 2};
  if (name == "lsq10")
    return {ProblemKind::least_squares, 10, 50, 5.0, 1.0, 0.0, 3};
  if (name == "lsq20")
    return {ProblemKind::least_squares, 20, 100, 5.0, 1.0, 0.0, 4};
  if (name == "logistic5")
    return {ProblemKind::logistic, 5, 40, 3.0, 1.0, 0.0, 5};
  if (name == "teacher10")
    return {ProblemKind::teacher, 10, 50, 5.0, 1.0, 0.1, 6};
  throw std::invalid_argument("unknown problem preset: " + std::string(name));
}

std::vector<std::string_view> preset_names() {
  return {"abs1d", "quad1d", "lsq10", "lsq20", "logistic5", "teacher10"};
}

std::pair<double, Point> batch_loss_and_grad(const ProblemOracle& oracle,
                                             const Point& p, BatchId b) {
  Point grad(oracle.dim());
  const double loss = oracle.batch_loss_grad(p.span(), b, grad.span());
  return {loss, std::move(grad)};
}

std::string_view problem_kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::quadratic:
      return "quadratic";
    case ProblemKind::abs:
      return "abs";
    case ProblemKind::least_squares:
      return "least-squares";
    case ProblemKind::logistic:
      return "logistic";
    case ProblemKind::teacher:
      return "teacher";
  }
  return "unknown";
}

std::optional<ProblemKind> problem_kind_from_name(std::string_view name) {
  if (name == "quadratic") return ProblemKind::quadratic;
  if (name == "abs") return ProblemKind::abs;
  if (name == "least-squares") return ProblemKind::least_squares;
  if (name == "logistic") return ProblemKind::logistic;
  if (name == "teacher") return ProblemKind::teacher;
  return std::nullopt;
}

}  // namespace schedfree
