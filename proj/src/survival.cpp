#include "censtail/survival.hpp"

#include <algorithm>
#include <cmath>

namespace censtail {
namespace {

StepCurve counting_curve(const SortedCensoredSample& sample, bool weight_by_delta) {
  const auto& z = sample.z();
  const auto& d = sample.delta();
  const double n = static_cast<double>(z.size());
  StepCurve c;
  c.before_first = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    count += weight_by_delta ? static_cast<std::size_t>(d[i]) : 1;
    double v = static_cast<double>(count) / n;
    if (!c.jump_points.empty() && c.jump_points.back() == z[i]) {
      c.values_after.back() = v;
    } else {
      c.jump_points.push_back(z[i]);
      c.values_after.push_back(v);
    }
  }
  return c;
}

}  // namespace

double StepCurve::at(double x) const {
  auto it = std::upper_bound(jump_points.begin(), jump_points.end(), x);
  if (it == jump_points.begin()) return before_first;
  return values_after[static_cast<std::size_t>(it - jump_points.begin()) - 1];
}

double StepCurve::left_limit(double x) const {
  auto it = std::lower_bound(jump_points.begin(), jump_points.end(), x);
  if (it == jump_points.begin()) return before_first;
  return values_after[static_cast<std::size_t>(it - jump_points.begin()) - 1];
}

StepCurve empirical_H(const SortedCensoredSample& sample) {
  return counting_curve(sample, false);
}

StepCurve empirical_H1(const SortedCensoredSample& sample) {
  return counting_curve(sample, true);
}

SurvivalCurves::SurvivalCurves(const SortedCensoredSample& sample)
    : z_(sample.z()),
      hazard_prefix_(z_.size() + 1, 0.0),
      km_prefix_(z_.size() + 1, 1.0) {
  const auto& d = sample.delta();
  const std::size_t n = z_.size();
  for (std::size_t j = 0; j < n; ++j) {
    // at-risk count n - i + 1 for the 1-based index i = j + 1
    const double at_risk = static_cast<double>(n - j);
    hazard_prefix_[j + 1] = hazard_prefix_[j] + (d[j] ? 1.0 / at_risk : 0.0);
    km_prefix_[j + 1] = km_prefix_[j] * (d[j] ? (at_risk - 1.0) / at_risk : 1.0);
  }
}

double SurvivalCurves::kaplan_meier(double x) const {
  auto j = static_cast<std::size_t>(std::upper_bound(z_.begin(), z_.end(), x) - z_.begin());
  return km_prefix_[j];
}

double SurvivalCurves::cumulative_hazard(double z) const {
  auto j = static_cast<std::size_t>(std::lower_bound(z_.begin(), z_.end(), z) - z_.begin());
  return hazard_prefix_[j];
}

double SurvivalCurves::nelson_aalen(double z) const {
  return std::exp(-cumulative_hazard(z));
}

Table SurvivalCurves::to_table() const {
  Table t{{"z", "km_survival", "na_survival"}, {}};
  for (std::size_t j = 0; j < z_.size(); ++j) {
    if (j > 0 && z_[j - 1] == z_[j]) continue;
    t.rows.push_back({z_[j], kaplan_meier(z_[j]), nelson_aalen(z_[j])});
  }
  return t;
}

double kaplan_meier_survival(const SortedCensoredSample& sample, double x) {
  return SurvivalCurves(sample).kaplan_meier(x);
}

double nelson_aalen_survival(const SortedCensoredSample& sample, double z) {
  return SurvivalCurves(sample).nelson_aalen(z);
}

}  // namespace censtail
