#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "censtail/models.hpp"
#include "censtail/sample.hpp"

namespace censtail {

struct SimulationConfig {
  ModelSpec model{ParetoLoss{1.0}, std::nullopt};
  std::size_t n = 1000;
  std::size_t replications = 200;
  std::vector<std::size_t> k_grid;
  std::vector<std::string> estimators{"worms", "mns", "kernel"};
  std::vector<std::string> kernels{"biweight", "triweight"};
  std::uint64_t seed = 1;
  unsigned threads = 0;              // 0: hardware concurrency
  bool retain_replications = false;  // keep per-replication values in the result

  void validate() const;
};

// Welford running moments; `merge` combines partial aggregates.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::size_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  double variance_population() const noexcept;
  // mean of (x - target)^2
  double mean_squared_error(double target) const noexcept;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct CellSummary {
  std::optional<double> mean;  // nullopt when no replication was defined
  std::optional<double> bias;
  std::optional<double> mse;
  std::size_t defined_count = 0;
  std::size_t undefined_count = 0;
};

struct SimulationResult {
  SimulationConfig config;
  std::vector<std::string> estimator_names;
  std::vector<std::size_t> k_values;
  std::vector<double> targets;                 // per estimator: gamma1, or p for p_hat
  std::vector<std::vector<CellSummary>> cells;  // [estimator][k]
  double runtime_seconds = 0.0;
  // [replication][estimator][k], only when config.retain_replications
  std::vector<std::vector<std::vector<std::optional<double>>>> replications;

  const CellSummary& cell(const std::string& estimator, std::size_t k) const;
  // Mean of each k, in k order; undefined cells are nullopt.
  std::vector<std::optional<double>> mean_curve(const std::string& estimator) const;

  // Columns: estimator,k,mean,bias,mse,defined_count
  Table to_table() const;
};

SimulationResult run_simulation(const SimulationConfig& config);

// Total variation sum |v_{j+1} - v_j| over consecutive defined points.
double curve_smoothness(const std::vector<std::optional<double>>& path);

struct NormalityConfig {
  ModelSpec model{ParetoLoss{1.0}, std::nullopt};
  std::size_t n = 20000;
  std::size_t replications = 500;
  double k_exponent = 0.4;  // k = floor(n^k_exponent)
  std::string kernel = "biweight";
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct NormalityReport {
  std::size_t k = 0;
  double p = 1.0;
  std::size_t defined = 0;
  double empirical_mean = 0.0;      // of sqrt(k) (estimate - gamma1)
  double empirical_variance = 0.0;  // unbiased sample variance of the same
  double asymptotic_variance = 0.0;  // sigma^2_K at the model's p and gamma1
};

NormalityReport normality_check(const NormalityConfig& config);

// JSON configuration and result documents. Errors carry the offending field
// path, e.g. "ConfigError: model.loss.gamma1: must be > 0".
SimulationConfig parse_simulation_config(std::string_view json_text);
std::string simulation_config_to_json(const SimulationConfig& config);
std::string simulation_result_to_json(const SimulationResult& result);

}  // namespace censtail
