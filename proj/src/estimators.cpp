#include "censtail/estimators.hpp"

#include <cmath>

#include "censtail/error.hpp"

namespace censtail {

TailSample::TailSample(SortedCensoredSample sample)
    : sample_(std::move(sample)), curves_(sample_) {}

void TailSample::require_k(std::size_t k) const {
  if (k < 1 || k + 1 > size()) {
    throw Error(ErrorCode::InvalidK, "k = " + std::to_string(k) + " outside [1, " +
                                         std::to_string(size() == 0 ? 0 : size() - 1) + "]");
  }
}

double TailSample::hill(std::size_t k) const {
  require_k(k);
  const auto& z = sample_.z();
  const std::size_t n = size();
  const double threshold = z[n - k - 1];
  double sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) sum += std::log(z[n - i] / threshold);
  return sum / static_cast<double>(k);
}

double TailSample::p_hat(std::size_t k) const {
  if (k < 1 || k > size()) {
    throw Error(ErrorCode::InvalidK,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(size()) + "]");
  }
  const auto& d = sample_.delta();
  const std::size_t n = size();
  std::size_t uncensored = 0;
  for (std::size_t i = 1; i <= k; ++i) uncensored += static_cast<std::size_t>(d[n - i]);
  return static_cast<double>(uncensored) / static_cast<double>(k);
}

double TailSample::efg(std::size_t k) const {
  require_k(k);
  double p = p_hat(k);
  if (p == 0.0) {
    throw Error(ErrorCode::DegenerateP, "all top " + std::to_string(k) + " observations censored");
  }
  return hill(k) / p;
}

double TailSample::worms(std::size_t k) const {
  require_k(k);
  const auto& z = sample_.z();
  const std::size_t n = size();
  const double denom = curves_.kaplan_meier_at(n - k);
  if (denom == 0.0) {
    throw Error(ErrorCode::ZeroSurvivalAtThreshold,
                "Kaplan-Meier survival is 0 at the threshold for k = " + std::to_string(k));
  }
  double sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    // 0-based z[n-i] = Z_{n-i+1:n}, z[n-i-1] = Z_{n-i:n}
    sum += curves_.kaplan_meier_at(n - i) / denom * std::log(z[n - i] / z[n - i - 1]);
  }
  return sum;
}

template <class Weight>
double TailSample::nelson_aalen_sum(std::size_t k, Weight&& weight) const {
  require_k(k);
  const auto& z = sample_.z();
  const auto& d = sample_.delta();
  const std::size_t n = size();
  const double threshold = z[n - k - 1];
  const double threshold_hazard = curves_.cumulative_hazard_at(n - k);
  double sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    if (!d[n - i]) continue;
    // ratio of Nelson-Aalen survivals at Z_{n-i+1:n} and Z_{n-k:n}, in (0,1]
    const double ratio = std::exp(threshold_hazard - curves_.cumulative_hazard_at(n - i + 1));
    const double w = ratio / static_cast<double>(i);
    sum += w * weight(ratio) * std::log(z[n - i] / threshold);
  }
  return sum;
}

double TailSample::mns(std::size_t k) const {
  return nelson_aalen_sum(k, [](double) { return 1.0; });
}

double TailSample::kernel_estimator(std::size_t k, const Kernel& kernel) const {
  if (!kernel.axioms().passed()) {
    throw Error(ErrorCode::KernelAxiomViolation,
                "kernel '" + kernel.name() + "' does not satisfy [A1]-[A4]");
  }
  return nelson_aalen_sum(k, [&](double r) { return kernel.g_prime(r); });
}

double hill(const SortedCensoredSample& s, std::size_t k) { return TailSample(s).hill(k); }
double p_hat(const SortedCensoredSample& s, std::size_t k) { return TailSample(s).p_hat(k); }
double efg(const SortedCensoredSample& s, std::size_t k) { return TailSample(s).efg(k); }
double worms(const SortedCensoredSample& s, std::size_t k) { return TailSample(s).worms(k); }
double mns(const SortedCensoredSample& s, std::size_t k) { return TailSample(s).mns(k); }
double kernel_estimator(const SortedCensoredSample& s, std::size_t k, const Kernel& kernel) {
  return TailSample(s).kernel_estimator(k, kernel);
}

std::string EstimatorSpec::column_name() const {
  switch (kind) {
    case EstimatorKind::Hill: return "hill";
    case EstimatorKind::PHat: return "p_hat";
    case EstimatorKind::Efg: return "efg";
    case EstimatorKind::Worms: return "worms";
    case EstimatorKind::Mns: return "mns";
    case EstimatorKind::Kernel: return "kernel_" + kernel->name();
  }
  return "unknown";
}

double EstimatorSpec::evaluate(const TailSample& sample, std::size_t k) const {
  switch (kind) {
    case EstimatorKind::Hill: return sample.hill(k);
    case EstimatorKind::PHat: return sample.p_hat(k);
    case EstimatorKind::Efg: return sample.efg(k);
    case EstimatorKind::Worms: return sample.worms(k);
    case EstimatorKind::Mns: return sample.mns(k);
    case EstimatorKind::Kernel: return sample.kernel_estimator(k, *kernel);
  }
  throw Error(ErrorCode::Internal, "unhandled estimator kind");
}

std::vector<EstimatorSpec> make_estimators(const std::vector<std::string>& names,
                                           const std::vector<std::string>& kernels) {
  std::vector<EstimatorSpec> out;
  for (const auto& name : names) {
    if (name == "hill") out.push_back({EstimatorKind::Hill, std::nullopt});
    else if (name == "p_hat") out.push_back({EstimatorKind::PHat, std::nullopt});
    else if (name == "efg") out.push_back({EstimatorKind::Efg, std::nullopt});
    else if (name == "worms") out.push_back({EstimatorKind::Worms, std::nullopt});
    else if (name == "mns") out.push_back({EstimatorKind::Mns, std::nullopt});
    else if (name == "kernel") {
      for (const auto& k : kernels) out.push_back({EstimatorKind::Kernel, builtin_kernel(k)});
    } else if (name.rfind("kernel_", 0) == 0) {
      out.push_back({EstimatorKind::Kernel, builtin_kernel(name.substr(7))});
    } else {
      try {
        out.push_back({EstimatorKind::Kernel, builtin_kernel(name)});
      } catch (const Error&) {
        throw Error(ErrorCode::ConfigError, "unknown estimator '" + name + "'");
      }
    }
  }
  return out;
}

const std::vector<std::optional<double>>& EstimatePath::column(const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return estimates[j];
  }
  throw Error(ErrorCode::DomainError, "no estimator column '" + name + "'");
}

Table EstimatePath::to_table() const {
  Table t;
  t.columns.push_back("k");
  t.columns.insert(t.columns.end(), names.begin(), names.end());
  for (std::size_t r = 0; r < k_values.size(); ++r) {
    std::vector<Cell> row;
    row.emplace_back(static_cast<std::int64_t>(k_values[r]));
    for (const auto& col : estimates) {
      if (col[r]) row.emplace_back(*col[r]);
      else row.emplace_back(std::monostate{});
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::size_t> k_range(std::size_t k_min, std::size_t k_max, std::size_t step) {
  if (step == 0) throw Error(ErrorCode::ConfigError, "k step must be >= 1");
  std::vector<std::size_t> out;
  for (std::size_t k = k_min; k <= k_max; k += step) out.push_back(k);
  return out;
}

EstimatePath estimate_path(const TailSample& sample, const std::vector<std::size_t>& k_grid,
                           const std::vector<EstimatorSpec>& estimators) {
  for (auto k : k_grid) {
    if (k < 1 || k + 1 > sample.size()) {
      throw Error(ErrorCode::InvalidK, "k = " + std::to_string(k) + " outside [1, " +
                                           std::to_string(sample.size() - 1) + "]");
    }
  }
  EstimatePath path;
  path.k_values = k_grid;
  for (const auto& e : estimators) {
    path.names.push_back(e.column_name());
    std::vector<std::optional<double>> column;
    column.reserve(k_grid.size());
    for (auto k : k_grid) {
      try {
        double v = e.evaluate(sample, k);
        if (!std::isfinite(v)) {
          throw Error(ErrorCode::Internal, e.column_name() + " produced a non-finite value at k = " +
                                               std::to_string(k));
        }
        column.emplace_back(v);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::DegenerateP &&
            err.code() != ErrorCode::ZeroSurvivalAtThreshold) {
          throw;
        }
        column.emplace_back(std::nullopt);
      }
    }
    path.estimates.push_back(std::move(column));
  }
  return path;
}

EstimatePath estimate_path(const SortedCensoredSample& sample,
                           const std::vector<std::size_t>& k_grid,
                           const std::vector<EstimatorSpec>& estimators) {
  return estimate_path(TailSample(sample), k_grid, estimators);
}

}  // namespace censtail
