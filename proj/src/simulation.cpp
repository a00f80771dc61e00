#include "censtail/simulation.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <new>
#include <thread>

#include "censtail/error.hpp"
#include "censtail/estimators.hpp"
#include "censtail/kernels.hpp"

namespace censtail {
namespace {

using Replication = std::vector<std::vector<std::optional<double>>>;

std::vector<EstimatorSpec> resolve_estimators(const SimulationConfig& c) {
  try {
    return make_estimators(c.estimators, c.kernels);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnknownKernel) throw Error(ErrorCode::ConfigError, e.what());
    throw;
  }
}

unsigned resolve_threads(unsigned hint, std::size_t replications) {
  unsigned t = hint ? hint : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, replications));
}

}  // namespace

void SimulationConfig::validate() const {
  try {
    model.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, std::string("model: ") + e.what());
  }
  if (n < 2) throw Error(ErrorCode::ConfigError, "n must be >= 2");
  if (replications < 1) throw Error(ErrorCode::ConfigError, "replications must be >= 1");
  if (k_grid.empty()) throw Error(ErrorCode::ConfigError, "k_grid is empty");
  for (auto k : k_grid) {
    if (k < 1 || k > n - 1) {
      throw Error(ErrorCode::ConfigError,
                  "k_grid value " + std::to_string(k) + " outside [1, n-1]");
    }
  }
  resolve_estimators(*this);
}

void MomentAccumulator::add(double x) {
  ++count_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(count_);
  m2_ += d * (x - mean_);
}

void MomentAccumulator::merge(const MomentAccumulator& o) {
  if (o.count_ == 0) return;
  if (count_ == 0) {
    *this = o;
    return;
  }
  const double n1 = static_cast<double>(count_);
  const double n2 = static_cast<double>(o.count_);
  const double d = o.mean_ - mean_;
  const double total = n1 + n2;
  mean_ += d * n2 / total;
  m2_ += o.m2_ + d * d * n1 * n2 / total;
  count_ += o.count_;
}

double MomentAccumulator::variance_population() const noexcept {
  return count_ ? m2_ / static_cast<double>(count_) : 0.0;
}

double MomentAccumulator::mean_squared_error(double target) const noexcept {
  const double b = mean_ - target;
  return variance_population() + b * b;
}

const CellSummary& SimulationResult::cell(const std::string& estimator, std::size_t k) const {
  for (std::size_t e = 0; e < estimator_names.size(); ++e) {
    if (estimator_names[e] != estimator) continue;
    for (std::size_t j = 0; j < k_values.size(); ++j) {
      if (k_values[j] == k) return cells[e][j];
    }
  }
  throw Error(ErrorCode::DomainError,
              "no cell for " + estimator + " at k = " + std::to_string(k));
}

std::vector<std::optional<double>> SimulationResult::mean_curve(const std::string& estimator) const {
  for (std::size_t e = 0; e < estimator_names.size(); ++e) {
    if (estimator_names[e] != estimator) continue;
    std::vector<std::optional<double>> out;
    for (const auto& c : cells[e]) out.push_back(c.mean);
    return out;
  }
  throw Error(ErrorCode::DomainError, "no estimator '" + estimator + "' in result");
}

Table SimulationResult::to_table() const {
  Table t{{"estimator", "k", "mean", "bias", "mse", "defined_count"}, {}};
  auto opt = [](const std::optional<double>& v) -> Cell {
    return v ? Cell{*v} : Cell{std::monostate{}};
  };
  for (std::size_t e = 0; e < estimator_names.size(); ++e) {
    for (std::size_t j = 0; j < k_values.size(); ++j) {
      const auto& c = cells[e][j];
      t.rows.push_back({estimator_names[e], static_cast<std::int64_t>(k_values[j]), opt(c.mean),
                        opt(c.bias), opt(c.mse), static_cast<std::int64_t>(c.defined_count)});
    }
  }
  return t;
}

SimulationResult run_simulation(const SimulationConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto estimators = resolve_estimators(config);
  const std::size_t R = config.replications;

  std::vector<Replication> values;
  try {
    values.resize(R);
  } catch (const std::bad_alloc&) {
    throw Error(ErrorCode::Internal, "resource exhaustion allocating replication buffer");
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= R || failed.load()) return;
      try {
        RngStream rng(config.seed, r + 1);
        TailSample sample(sort_with_concomitants(sample_censored(config.model, config.n, rng)));
        values[r] = estimate_path(sample, config.k_grid, estimators).estimates;
      } catch (const std::bad_alloc&) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::make_exception_ptr(
              Error(ErrorCode::Internal, "resource exhaustion in replication " + std::to_string(r + 1)));
        }
        failed = true;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        failed = true;
      }
    }
  };

  {
    const unsigned threads = resolve_threads(config.threads, R);
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  SimulationResult result;
  result.config = config;
  result.k_values = config.k_grid;
  for (const auto& e : estimators) {
    result.estimator_names.push_back(e.column_name());
    result.targets.push_back(e.kind == EstimatorKind::PHat ? config.model.p()
                                                           : config.model.gamma1());
  }

  // Reduction in replication order keeps the result independent of scheduling.
  const std::size_t K = config.k_grid.size();
  result.cells.assign(estimators.size(), std::vector<CellSummary>(K));
  for (std::size_t e = 0; e < estimators.size(); ++e) {
    for (std::size_t j = 0; j < K; ++j) {
      MomentAccumulator acc;
      for (std::size_t r = 0; r < R; ++r) {
        if (const auto& v = values[r][e][j]) acc.add(*v);
      }
      auto& c = result.cells[e][j];
      c.defined_count = acc.count();
      c.undefined_count = R - acc.count();
      if (acc.count() > 0) {
        c.mean = acc.mean();
        c.bias = acc.mean() - result.targets[e];
        c.mse = acc.mean_squared_error(result.targets[e]);
      }
    }
  }
  if (config.retain_replications) result.replications = std::move(values);
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double curve_smoothness(const std::vector<std::optional<double>>& path) {
  double total = 0.0;
  std::optional<double> prev;
  std::size_t defined = 0;
  for (const auto& v : path) {
    if (!v) continue;
    ++defined;
    if (prev) total += std::abs(*v - *prev);
    prev = v;
  }
  if (defined < 2) {
    throw Error(ErrorCode::TooFewPoints, "curve has fewer than 2 defined points");
  }
  return total;
}

NormalityReport normality_check(const NormalityConfig& nc) {
  if (!(nc.k_exponent > 0.0 && nc.k_exponent < 1.0)) {
    throw Error(ErrorCode::ConfigError, "k_exponent must lie in (0,1)");
  }
  const auto k = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(nc.n), nc.k_exponent)));
  if (k < 1 || k + 1 > nc.n) throw Error(ErrorCode::ConfigError, "k rule gives k outside [1, n-1]");
  if (nc.replications < 2) throw Error(ErrorCode::ConfigError, "replications must be >= 2");

  SimulationConfig sc;
  sc.model = nc.model;
  sc.n = nc.n;
  sc.replications = nc.replications;
  sc.k_grid = {k};
  sc.estimators = {"kernel"};
  sc.kernels = {nc.kernel};
  sc.seed = nc.seed;
  sc.threads = nc.threads;
  sc.retain_replications = true;
  const auto result = run_simulation(sc);

  NormalityReport report;
  report.k = k;
  report.p = nc.model.p();
  const double gamma1 = nc.model.gamma1();
  const double root_k = std::sqrt(static_cast<double>(k));
  MomentAccumulator acc;
  for (const auto& rep : result.replications) {
    if (const auto& v = rep[0][0]) acc.add(root_k * (*v - gamma1));
  }
  report.defined = acc.count();
  report.empirical_mean = acc.mean();
  report.empirical_variance = acc.count() > 1
      ? acc.variance_population() * static_cast<double>(acc.count()) / static_cast<double>(acc.count() - 1)
      : 0.0;

  MomentSpec spec;
  spec.p = report.p;
  spec.gamma1 = gamma1;
  try {
    report.asymptotic_variance = asymptotic_variance(builtin_kernel(nc.kernel), spec);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  return report;
}

}  // namespace censtail
