#pragma once

#include <vector>

#include "censtail/sample.hpp"

namespace censtail {

// Right-continuous step function: `before_first` for x < jump_points[0],
// values_after[j] on [jump_points[j], jump_points[j+1]).
struct StepCurve {
  std::vector<double> jump_points;
  std::vector<double> values_after;
  double before_first = 1.0;

  double at(double x) const;
  // lim_{e->0+} of the curve at x - e.
  double left_limit(double x) const;
};

// H_n(z) = n^-1 #{Z_{i:n} <= z}
StepCurve empirical_H(const SortedCensoredSample& sample);
// H_n^(1)(z) = n^-1 sum delta_[i:n] 1{Z_{i:n} <= z}
StepCurve empirical_H1(const SortedCensoredSample& sample);

// Product-limit estimators of the survival function of X, evaluated lazily
// from prefix quantities. Both are evaluated as functions of the value z, so
// tied observations enter together:
//   Kaplan-Meier  : product over Z_{i:n} <= x of ((n-i)/(n-i+1))^delta
//   Nelson-Aalen  : product over Z_{i:n} <  z of exp(-delta/(n-i+1))
class SurvivalCurves {
 public:
  explicit SurvivalCurves(const SortedCensoredSample& sample);

  std::size_t size() const noexcept { return z_.size(); }

  double kaplan_meier(double x) const;
  double nelson_aalen(double z) const;
  // Cumulative Nelson-Aalen hazard over Z_{i:n} < z, i.e. -log of nelson_aalen(z).
  double cumulative_hazard(double z) const;

  // Index-based values at the order statistic Z_{i:n} (1-based i): KM uses
  // factors 1..i, NA uses factors 1..i-1. Same as the value-based functions
  // when there are no ties.
  double kaplan_meier_at(std::size_t i) const { return km_prefix_[i]; }
  double cumulative_hazard_at(std::size_t i) const { return hazard_prefix_[i - 1]; }

  // One row per distinct z: z, km_survival, na_survival.
  Table to_table() const;

 private:
  std::vector<double> z_;
  std::vector<double> hazard_prefix_;  // sum over the first j order statistics
  std::vector<double> km_prefix_;      // product over the first j order statistics
};

double kaplan_meier_survival(const SortedCensoredSample& sample, double x);
double nelson_aalen_survival(const SortedCensoredSample& sample, double z);

}  // namespace censtail
