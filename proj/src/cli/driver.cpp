// Command-line harness: single runs, lr/policy sweeps, bound evaluation on
// saved traces, and momentum parameter conversion. Settings come from an
// optional JSON config file; command-line flags override config values.
#include "driver.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "schedfree/averaging.hpp"
#include "schedfree/bounds.hpp"
#include "schedfree/core.hpp"
#include "schedfree/momentum.hpp"
#include "schedfree/problems.hpp"
#include "schedfree/schedulefree.hpp"
#include "schedfree/schedulep.hpp"
#include "schedfree/schedules.hpp"
#include "schedfree/trace_io.hpp"

namespace schedfree {
namespace {

/// Internal control flow for anything that should terminate the process
/// with a message on stderr and a specific exit code.
struct cli_error {
  int code;
  std::string message;
};

/// Everything a run needs, resolved from defaults, then the config file,
/// then explicit flags (strongest last).
struct RunSettings {
  std::string problem = "abs1d";
  std::string opt = "schedulet";
  std::string schedule = "constant";
  std::string ct_policy = "theory";
  double beta = 0.9;
  std::uint64_t steps = 100;
  std::uint64_t seed = 0;
  std::string out;  // empty -> per-subcommand default
  double base_lr = 0.1;
  double warmup_frac = 0.05;
  double cooldown_frac = 0.25;
  double gamma_max = std::numeric_limits<double>::infinity();
  double lambda0 = 0.0;
  double diverge_slope = 1.0;
  double diverge_onset_frac = 0.5;
  bool precondition = false;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double fstar_noise = 0.0;
  bool track_bound = false;
  // sweep grids (cartesian product); absent axis falls back to the scalar.
  std::vector<double> lr_grid;
  std::vector<std::string> policy_grid;
  bool has_lr_grid = false;
  bool has_policy_grid = false;
  // convert-momentum
  std::string direction = "pa-to-momentum";
  double alpha = 0.5;
  double gamma0 = 1.0;
};

// ---------------------------------------------------------------------------
// config file

double config_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) {
    throw cli_error{2, "config key '" + key + "' must be a number"};
  }
  return v.get<double>();
}

std::uint64_t config_uint(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_unsigned()) {
    throw cli_error{2, "config key '" + key + "' must be a nonnegative integer"};
  }
  return v.get<std::uint64_t>();
}

bool config_bool(const nlohmann::json& v, const std::string& key) {
  if (!v.is_boolean()) {
    throw cli_error{2, "config key '" + key + "' must be a boolean"};
  }
  return v.get<bool>();
}

std::string config_string(const nlohmann::json& v, const std::string& key) {
  if (!v.is_string()) {
    throw cli_error{2, "config key '" + key + "' must be a string"};
  }
  return v.get<std::string>();
}

/// gamma_max accepts a number or the string "inf".
double config_gamma_max(const nlohmann::json& v) {
  if (v.is_string() && v.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (v.is_number()) return v.get<double>();
  throw cli_error{2, "config key 'gamma_max' must be a number or \"inf\""};
}

void apply_config_file(RunSettings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli_error{2, "cannot open config file '" + path + "'"};
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw cli_error{2, "config file '" + path + "': " + e.what()};
  }
  if (!j.is_object()) {
    throw cli_error{2, "config file '" + path + "' must hold a JSON object"};
  }
  for (const auto& [key, val] : j.items()) {
    if (key == "problem") s.problem = config_string(val, key);
    else if (key == "opt") s.opt = config_string(val, key);
    else if (key == "schedule") s.schedule = config_string(val, key);
    else if (key == "ct_policy") s.ct_policy = config_string(val, key);
    else if (key == "beta") s.beta = config_number(val, key);
    else if (key == "steps") s.steps = config_uint(val, key);
    else if (key == "seed") s.seed = config_uint(val, key);
    else if (key == "out") s.out = config_string(val, key);
    else if (key == "base_lr") s.base_lr = config_number(val, key);
    else if (key == "warmup_frac") s.warmup_frac = config_number(val, key);
    else if (key == "cooldown_frac") s.cooldown_frac = config_number(val, key);
    else if (key == "gamma_max") s.gamma_max = config_gamma_max(val);
    else if (key == "lambda0") s.lambda0 = config_number(val, key);
    else if (key == "diverge_slope") s.diverge_slope = config_number(val, key);
    else if (key == "diverge_onset_frac")
      s.diverge_onset_frac = config_number(val, key);
    else if (key == "precondition") s.precondition = config_bool(val, key);
    else if (key == "adam_beta2") s.adam_beta2 = config_number(val, key);
    else if (key == "adam_eps") s.adam_eps = config_number(val, key);
    else if (key == "fstar_noise") s.fstar_noise = config_number(val, key);
    else if (key == "track_bound") s.track_bound = config_bool(val, key);
    else if (key == "lr_grid") {
      if (!val.is_array()) {
        throw cli_error{2, "config key 'lr_grid' must be an array of numbers"};
      }
      s.lr_grid.clear();
      for (const auto& e : val) s.lr_grid.push_back(config_number(e, key));
      s.has_lr_grid = true;
    } else if (key == "policy_grid") {
      if (!val.is_array()) {
        throw cli_error{2,
                        "config key 'policy_grid' must be an array of strings"};
      }
      s.policy_grid.clear();
      for (const auto& e : val) s.policy_grid.push_back(config_string(e, key));
      s.has_policy_grid = true;
    } else if (key == "direction") {
      s.direction = config_string(val, key);
    } else if (key == "alpha") {
      s.alpha = config_number(val, key);
    } else if (key == "gamma0") {
      s.gamma0 = config_number(val, key);
    } else {
      throw cli_error{2, "unknown config key '" + key + "'"};
    }
  }
}

// ---------------------------------------------------------------------------
// small shared helpers

/// Shortest decimal string that round-trips the double (CSV cells).
std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_gamma_max_flag(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw cli_error{2, "--gamma-max expects a number or 'inf', got '" + text + "'"};
}

std::unique_ptr<ProblemOracle> build_problem(const RunSettings& s) {
  try {
    return build(preset(s.problem));
  } catch (const std::invalid_argument& e) {
    throw cli_error{2, std::string(e.what())};
  }
}

ScheduleSpec build_schedule(const RunSettings& s) {
  auto kind = schedule_from_name(s.schedule);
  if (!kind) throw cli_error{2, "unknown schedule '" + s.schedule + "'"};
  const std::uint64_t T = s.steps;
  try {
    switch (*kind) {
      case ScheduleKind::constant:
        return make_constant(s.base_lr, T);
      case ScheduleKind::wsd:
        return make_wsd_frac(s.base_lr, T, s.warmup_frac, s.cooldown_frac);
      case ScheduleKind::cosine:
        return make_cosine(
            s.base_lr, T,
            static_cast<std::uint64_t>(s.warmup_frac * static_cast<double>(T)));
      case ScheduleKind::constant_then_diverge: {
        const double onset_f = s.diverge_onset_frac * static_cast<double>(T);
        return make_constant_then_diverge(
            s.base_lr, T, static_cast<std::uint64_t>(onset_f), s.diverge_slope);
      }
    }
  } catch (const std::invalid_argument& e) {
    throw cli_error{2, std::string(e.what())};
  }
  throw cli_error{2, "unknown schedule '" + s.schedule + "'"};
}

CtPolicy parse_policy(const std::string& name) {
  auto p = ct_policy_from_name(name);
  if (!p) throw cli_error{2, "unknown ct_policy '" + name + "'"};
  return *p;
}

void write_csv(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw cli_error{2, "cannot open output file '" + path + "'"};
  out << content;
  if (!out) throw cli_error{2, "write failed on '" + path + "'"};
}

// ---------------------------------------------------------------------------
// optimizer dispatch

std::vector<TraceRecord> run_momentum(const RunSettings& s,
                                      const ProblemOracle& oracle) {
  const ScheduleSpec sched = build_schedule(s);
  std::vector<double> gammas(s.steps + 1);
  for (std::uint64_t t = 0; t <= s.steps; ++t) gammas[t] = gamma(sched, t);
  MomentumParams mp;
  try {
    mp = convert_pa_to_momentum(gammas, s.lambda0);
  } catch (const std::invalid_argument& e) {
    // A cosine schedule ends at rate 0, which has no momentum representation
    // over the full horizon; surface the conversion's own message.
    throw cli_error{2, std::string("momentum conversion failed: ") + e.what()};
  }

  const std::size_t dim = oracle.dim();
  Point x = oracle.start();
  Point m(dim, 0.0);
  Point g(dim, 0.0);
  double s1 = gammas[0];
  std::vector<TraceRecord> trace;
  trace.reserve(s.steps);
  for (std::uint64_t t = 0; t < s.steps; ++t) {
    const BatchId zeta = oracle.sample(t, s.seed);
    oracle.batch_grad(x.span(), zeta, g.span());
    const double grad_norm = std::sqrt(simd::sumsq(g.span()));
    if (!std::isfinite(grad_norm)) throw diverged_error(t);
    momentum_step(x.span(), m.span(), g.span(), mp.alpha[t], mp.lambda[t]);
    s1 += gammas[t + 1];
    const double loss = oracle.full_loss(x.span());
    if (!std::isfinite(loss)) throw diverged_error(t);
    TraceRecord row;
    row.t = t;
    row.eta = eta(sched, t);
    row.gamma = mp.alpha[t];       // the rate actually applied to x
    row.c = gammas[t + 1] / s1;    // averaging weight of the equivalent run
    row.loss = loss;
    row.grad_norm = grad_norm;
    trace.push_back(row);
  }
  return trace;
}

std::vector<TraceRecord> run_sgd_momentum(const RunSettings& s,
                                          const ProblemOracle& oracle) {
  const ScheduleSpec sched = build_schedule(s);
  const std::size_t dim = oracle.dim();
  Point x = oracle.start();
  Point buf(dim, 0.0);
  Point g(dim, 0.0);
  std::vector<TraceRecord> trace;
  trace.reserve(s.steps);
  for (std::uint64_t t = 0; t < s.steps; ++t) {
    const BatchId zeta = oracle.sample(t, s.seed);
    oracle.batch_grad(x.span(), zeta, g.span());
    const double grad_norm = std::sqrt(simd::sumsq(g.span()));
    if (!std::isfinite(grad_norm)) throw diverged_error(t);
    const double rate = gamma(sched, t);
    for (std::size_t i = 0; i < dim; ++i) buf[i] = s.beta * buf[i] + g[i];
    simd::axpy(x.span(), -rate, buf.span());
    const double loss = oracle.full_loss(x.span());
    if (!std::isfinite(loss)) throw diverged_error(t);
    TraceRecord row;
    row.t = t;
    row.eta = eta(sched, t);
    row.gamma = rate;
    row.c = 0.0;  // no averaging sequence in the baseline
    row.loss = loss;
    row.grad_norm = grad_norm;
    trace.push_back(row);
  }
  return trace;
}

std::vector<TraceRecord> execute_run(const RunSettings& s,
                                     const ProblemOracle& oracle) {
  try {
    if (s.opt == "schedulet") {
      SFConfig cfg;
      cfg.beta = s.beta;
      cfg.schedule = build_schedule(s);
      cfg.policy = parse_policy(s.ct_policy);
      cfg.steps = s.steps;
      cfg.seed = s.seed;
      cfg.track_bound = s.track_bound;
      return sf_run(cfg, oracle);
    }
    if (s.opt == "schedulep") {
      PolyakConfig cfg;
      cfg.beta = s.beta;
      cfg.gamma_max = s.gamma_max;
      cfg.steps = s.steps;
      cfg.seed = s.seed;
      cfg.misspecification_noise = s.fstar_noise;
      cfg.track_bound = s.track_bound;
      if (s.precondition) {
        auto precond = DiagonalPreconditioner::adam(oracle.dim(), s.adam_beta2,
                                                    s.adam_eps);
        return schedulep_run(cfg, oracle, oracle.start(), &precond);
      }
      return schedulep_run(cfg, oracle);
    }
    if (s.opt == "momentum") return run_momentum(s, oracle);
    if (s.opt == "sgd-m") return run_sgd_momentum(s, oracle);
  } catch (const std::invalid_argument& e) {
    throw cli_error{2, std::string(e.what())};
  }
  throw cli_error{2, "unknown optimizer '" + s.opt +
                         "' (expected schedulet | schedulep | momentum | "
                         "sgd-m)"};
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_run(const RunSettings& s) {
  auto oracle = build_problem(s);
  const double fstar = oracle->metadata().fstar;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<TraceRecord> trace = execute_run(s, *oracle);
  const std::chrono::duration<double> wall =
      std::chrono::steady_clock::now() - t0;

  const std::string out = s.out.empty() ? "trace.jsonl" : s.out;
  try {
    write_trace_jsonl(out, trace);
  } catch (const std::runtime_error& e) {
    throw cli_error{2, std::string(e.what())};
  }

  double final_loss = oracle->full_loss(oracle->start().span());
  double min_loss = final_loss;
  if (!trace.empty()) {
    final_loss = trace.back().loss;
    for (const TraceRecord& row : trace) min_loss = std::min(min_loss, row.loss);
  }
  std::printf("final_gap=%s min_loss=%s wall_s=%.3f\n",
              format_double(final_loss - fstar).c_str(),
              format_double(min_loss).c_str(), wall.count());
  return 0;
}

std::size_t sweep_workers(std::size_t points) {
  std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(points, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("SCHEDFREE_WORKERS")) {
    std::uint64_t parsed = 0;
    auto res = std::from_chars(env, env + std::strlen(env), parsed);
    if (res.ec != std::errc{} || res.ptr != env + std::strlen(env) ||
        parsed == 0) {
      throw cli_error{2, std::string("SCHEDFREE_WORKERS must be a positive "
                                     "integer, got '") +
                             env + "'"};
    }
    workers = std::min<std::size_t>(points, parsed);
  }
  return std::max<std::size_t>(1, workers);
}

int cmd_sweep(const RunSettings& s) {
  const std::vector<double> lrs =
      s.has_lr_grid ? s.lr_grid : std::vector<double>{s.base_lr};
  const std::vector<std::string> policies =
      s.has_policy_grid ? s.policy_grid : std::vector<std::string>{s.ct_policy};
  if (lrs.empty() || policies.empty()) {
    throw cli_error{2, "empty sweep grid"};
  }
  for (const std::string& p : policies) parse_policy(p);  // fail fast, by name

  struct GridPoint {
    double lr;
    std::string policy;
  };
  std::vector<GridPoint> grid;
  for (const std::string& p : policies) {
    for (double lr : lrs) grid.push_back({lr, p});
  }

  auto oracle = build_problem(s);
  const double fstar = oracle->metadata().fstar;

  struct Cell {
    double final_gap = 0.0;
    double best_gap = 0.0;
    bool diverged = false;
  };
  std::vector<Cell> cells(grid.size());
  std::vector<std::string> failures(grid.size());

  const auto run_point = [&](std::size_t i) {
    RunSettings point = s;
    point.ct_policy = grid[i].policy;
    // The Polyak variant has no schedule; its lr axis is the stepsize cap.
    if (s.opt == "schedulep") {
      point.gamma_max = grid[i].lr;
    } else {
      point.base_lr = grid[i].lr;
    }
    try {
      std::vector<TraceRecord> trace = execute_run(point, *oracle);
      double final_loss = oracle->full_loss(oracle->start().span());
      double min_loss = final_loss;
      if (!trace.empty()) {
        final_loss = trace.back().loss;
        for (const TraceRecord& row : trace) {
          min_loss = std::min(min_loss, row.loss);
        }
      }
      cells[i] = {final_loss - fstar, min_loss - fstar, false};
    } catch (const diverged_error&) {
      cells[i].diverged = true;
    } catch (const cli_error& e) {
      failures[i] = e.message;
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  };

  const std::size_t workers = sweep_workers(grid.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < grid.size();
             i = next.fetch_add(1)) {
          run_point(i);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!failures[i].empty()) throw cli_error{2, failures[i]};
  }

  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (grid[a].policy != grid[b].policy) return grid[a].policy < grid[b].policy;
    if (grid[a].lr != grid[b].lr) return grid[a].lr < grid[b].lr;
    return a < b;
  });

  std::string csv = "lr,policy,final_gap,best_gap\n";
  for (std::size_t i : order) {
    csv += format_double(grid[i].lr);
    csv += ',';
    csv += grid[i].policy;
    csv += ',';
    if (cells[i].diverged) {
      csv += "diverged,diverged";
    } else {
      csv += format_double(cells[i].final_gap);
      csv += ',';
      csv += format_double(cells[i].best_gap);
    }
    csv += '\n';
  }
  const std::string out = s.out.empty() ? "sweep.csv" : s.out;
  write_csv(out, csv);
  std::printf("sweep: %zu points, %zu workers, table written to %s\n",
              grid.size(), workers, out.c_str());
  return 0;
}

int cmd_bound(const std::string& trace_path, const std::string& mode_name,
              double dhat, double f0, const std::string& out_path) {
  auto mode = bound_mode_from_name(mode_name);
  if (!mode) throw cli_error{2, "unknown bound mode '" + mode_name + "'"};
  std::vector<TraceRecord> trace;
  try {
    trace = read_trace_jsonl(trace_path);
  } catch (const trace_parse_error& e) {
    throw cli_error{2, std::string(e.what())};
  } catch (const std::runtime_error& e) {
    throw cli_error{2, std::string(e.what())};
  }
  std::vector<double> bounds;
  try {
    bounds = empirical_bound_trace(trace, *mode, dhat, f0);
  } catch (const std::invalid_argument& e) {
    throw cli_error{2, std::string(e.what())};
  }
  std::string csv = "t,B_t\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    csv += std::to_string(trace[i].t);
    csv += ',';
    csv += format_double(bounds[i]);
    csv += '\n';
  }
  const std::string out = out_path.empty() ? "bound.csv" : out_path;
  write_csv(out, csv);
  std::printf("bound: %zu rows written to %s\n", bounds.size(), out.c_str());
  return 0;
}

int cmd_convert(const RunSettings& s) {
  std::string csv;
  std::size_t rows = 0;
  if (s.direction == "pa-to-momentum") {
    if (s.steps == 0) {
      throw cli_error{2, "pa-to-momentum needs steps >= 1"};
    }
    const ScheduleSpec sched = build_schedule(s);
    std::vector<double> gammas(s.steps + 1);
    for (std::uint64_t t = 0; t <= s.steps; ++t) gammas[t] = gamma(sched, t);
    MomentumParams mp;
    try {
      mp = convert_pa_to_momentum(gammas, s.lambda0);
    } catch (const std::invalid_argument& e) {
      throw cli_error{2, std::string(e.what())};
    }
    csv = "t,alpha,lambda\n";
    for (std::size_t t = 0; t < mp.alpha.size(); ++t) {
      csv += std::to_string(t);
      csv += ',';
      csv += format_double(mp.alpha[t]);
      csv += ',';
      csv += format_double(mp.lambda[t]);
      csv += '\n';
    }
    rows = mp.alpha.size();
  } else if (s.direction == "momentum-to-pa") {
    if (s.steps == 0) {
      throw cli_error{2, "momentum-to-pa needs steps >= 1"};
    }
    std::vector<double> alphas(s.steps, s.alpha);
    AveragingParams ap;
    try {
      ap = convert_momentum_to_pa(alphas, s.lambda0, s.gamma0);
    } catch (const std::invalid_argument& e) {
      throw cli_error{2, std::string(e.what())};
    }
    csv = "t,gamma,lambda\n";
    for (std::size_t t = 0; t < ap.gamma.size(); ++t) {
      csv += std::to_string(t);
      csv += ',';
      csv += format_double(ap.gamma[t]);
      csv += ',';
      if (t < ap.lambda.size()) csv += format_double(ap.lambda[t]);
      csv += '\n';
    }
    rows = ap.gamma.size();
  } else {
    throw cli_error{2, "unknown direction '" + s.direction +
                           "' (expected pa-to-momentum | momentum-to-pa)"};
  }
  const std::string out = s.out.empty() ? "conversion.csv" : s.out;
  write_csv(out, csv);
  std::printf("convert-momentum: %zu rows written to %s\n", rows, out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// argument plumbing

/// Raw flag values; `count` on the subcommand decides whether each one
/// overrides the config file.
struct FlagValues {
  std::string config;
  std::string out;
  std::string problem;
  std::string opt;
  std::string schedule;
  std::string ct_policy;
  std::string gamma_max;
  double beta = 0.0;
  double base_lr = 0.0;
  double warmup_frac = 0.0;
  double cooldown_frac = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
};

void add_run_flags(CLI::App* cmd, FlagValues& fv) {
  cmd->add_option("--config", fv.config, "JSON config file");
  cmd->add_option("--out", fv.out, "output path");
  cmd->add_option("--seed", fv.seed, "run seed");
  cmd->add_option("--steps", fv.steps, "number of optimizer steps T");
  cmd->add_option("--opt", fv.opt,
                  "optimizer: schedulet | schedulep | momentum | sgd-m");
  cmd->add_option("--problem", fv.problem,
                  "problem preset (abs1d, quad1d, lsq10, lsq20, logistic5, "
                  "teacher10)");
  cmd->add_option("--schedule", fv.schedule,
                  "schedule: constant | wsd | cosine | constant-then-diverge");
  cmd->add_option("--base-lr", fv.base_lr, "base learning rate");
  cmd->add_option("--ct-policy", fv.ct_policy,
                  "averaging weights: theory | wsd-closed | heuristic | "
                  "inverse-t");
  cmd->add_option("--beta", fv.beta, "interpolation parameter in [0,1]");
  cmd->add_option("--gamma-max", fv.gamma_max,
                  "stepsize cap for schedulep (number or 'inf')");
  cmd->add_option("--warmup-frac", fv.warmup_frac,
                  "warmup fraction of the horizon (default 0.05)");
  cmd->add_option("--cooldown-frac", fv.cooldown_frac,
                  "cooldown fraction of the horizon (default 0.25)");
}

RunSettings resolve_settings(const CLI::App* cmd, const FlagValues& fv) {
  RunSettings s;
  if (cmd->count("--config") > 0) apply_config_file(s, fv.config);
  if (cmd->count("--out") > 0) s.out = fv.out;
  if (cmd->count("--seed") > 0) s.seed = fv.seed;
  if (cmd->count("--steps") > 0) s.steps = fv.steps;
  if (cmd->count("--opt") > 0) s.opt = fv.opt;
  if (cmd->count("--problem") > 0) s.problem = fv.problem;
  if (cmd->count("--schedule") > 0) s.schedule = fv.schedule;
  if (cmd->count("--base-lr") > 0) s.base_lr = fv.base_lr;
  if (cmd->count("--ct-policy") > 0) s.ct_policy = fv.ct_policy;
  if (cmd->count("--beta") > 0) s.beta = fv.beta;
  if (cmd->count("--gamma-max") > 0) {
    s.gamma_max = parse_gamma_max_flag(fv.gamma_max);
  }
  if (cmd->count("--warmup-frac") > 0) s.warmup_frac = fv.warmup_frac;
  if (cmd->count("--cooldown-frac") > 0) s.cooldown_frac = fv.cooldown_frac;
  return s;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Schedule-free convex optimization harness"};
  app.require_subcommand(1);

  FlagValues run_fv;
  CLI::App* run_cmd = app.add_subcommand(
      "run", "Run one experiment; write a JSONL trace and a summary line");
  add_run_flags(run_cmd, run_fv);

  FlagValues sweep_fv;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep",
      "Run an lr x policy grid (lr_grid / policy_grid config keys); write a "
      "CSV table");
  add_run_flags(sweep_cmd, sweep_fv);

  std::string bound_trace;
  std::string bound_mode = "posthoc";
  std::string bound_out;
  double bound_dhat = 0.0;
  double bound_f0 = 0.0;
  CLI::App* bound_cmd = app.add_subcommand(
      "bound", "Evaluate the empirical convergence bound along a saved trace");
  bound_cmd->add_option("trace", bound_trace, "JSONL trace file")->required();
  bound_cmd->add_option("--mode", bound_mode, "posthoc | online");
  bound_cmd->add_option("--dhat", bound_dhat, "distance estimate D-hat")
      ->required();
  bound_cmd->add_option("--f0", bound_f0, "loss at the start point")
      ->required();
  bound_cmd->add_option("--out", bound_out, "output CSV (default bound.csv)");

  FlagValues conv_fv;
  CLI::App* conv_cmd = app.add_subcommand(
      "convert-momentum",
      "Convert between averaging schedules and momentum parameters");
  add_run_flags(conv_cmd, conv_fv);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      return app.exit(e);
    }
    if (run_cmd->parsed()) return cmd_run(resolve_settings(run_cmd, run_fv));
    if (sweep_cmd->parsed()) {
      return cmd_sweep(resolve_settings(sweep_cmd, sweep_fv));
    }
    if (bound_cmd->parsed()) {
      return cmd_bound(bound_trace, bound_mode, bound_dhat, bound_f0,
                       bound_out);
    }
    if (conv_cmd->parsed()) {
      return cmd_convert(resolve_settings(conv_cmd, conv_fv));
    }
    std::fprintf(stderr, "error: no subcommand given\n");
    return 2;
  } catch (const cli_error& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const diverged_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace schedfree
