#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "censtail/kernels.hpp"
#include "censtail/sample.hpp"
#include "censtail/survival.hpp"

namespace censtail {

// Sorted sample plus the product-limit prefixes every estimator reuses.
// k is the number of top order statistics; the threshold is Z_{n-k:n}.
class TailSample {
 public:
  explicit TailSample(SortedCensoredSample sample);

  std::size_t size() const noexcept { return sample_.size(); }
  const SortedCensoredSample& sorted() const noexcept { return sample_; }
  const SurvivalCurves& curves() const noexcept { return curves_; }

  double hill(std::size_t k) const;
  double p_hat(std::size_t k) const;  // allows k = n
  double efg(std::size_t k) const;
  double worms(std::size_t k) const;
  double mns(std::size_t k) const;
  double kernel_estimator(std::size_t k, const Kernel& kernel) const;

 private:
  void require_k(std::size_t k) const;
  template <class Weight>
  double nelson_aalen_sum(std::size_t k, Weight&& weight) const;

  SortedCensoredSample sample_;
  SurvivalCurves curves_;
};

double hill(const SortedCensoredSample& sample, std::size_t k);
double p_hat(const SortedCensoredSample& sample, std::size_t k);
double efg(const SortedCensoredSample& sample, std::size_t k);
double worms(const SortedCensoredSample& sample, std::size_t k);
double mns(const SortedCensoredSample& sample, std::size_t k);
double kernel_estimator(const SortedCensoredSample& sample, std::size_t k, const Kernel& kernel);

enum class EstimatorKind { Hill, PHat, Efg, Worms, Mns, Kernel };

struct EstimatorSpec {
  EstimatorKind kind;
  std::optional<Kernel> kernel;  // set iff kind == Kernel

  // "hill", "p_hat", "efg", "worms", "mns", or "kernel_<kernel name>".
  std::string column_name() const;
  double evaluate(const TailSample& sample, std::size_t k) const;
};

// Names: hill, p_hat, efg, worms, mns, kernel. "kernel" expands to one entry
// per kernel name in `kernels`; a bare kernel name is accepted as well.
std::vector<EstimatorSpec> make_estimators(const std::vector<std::string>& names,
                                           const std::vector<std::string>& kernels);

// Estimator values indexed by k. Undefined cells (DegenerateP,
// ZeroSurvivalAtThreshold) are std::nullopt, never NaN.
struct EstimatePath {
  std::vector<std::size_t> k_values;
  std::vector<std::string> names;
  std::vector<std::vector<std::optional<double>>> estimates;  // [estimator][k]

  const std::vector<std::optional<double>>& column(const std::string& name) const;
  // Columns: k, then one per estimator.
  Table to_table() const;
};

std::vector<std::size_t> k_range(std::size_t k_min, std::size_t k_max, std::size_t step = 1);

EstimatePath estimate_path(const TailSample& sample, const std::vector<std::size_t>& k_grid,
                           const std::vector<EstimatorSpec>& estimators);
EstimatePath estimate_path(const SortedCensoredSample& sample,
                           const std::vector<std::size_t>& k_grid,
                           const std::vector<EstimatorSpec>& estimators);

}  // namespace censtail
