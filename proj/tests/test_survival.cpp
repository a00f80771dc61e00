#include <doctest.h>

#include <cmath>
#include <random>

#include "censtail/survival.hpp"
#include "oracles.hpp"

using namespace censtail;
using doctest::Approx;

namespace {

SortedCensoredSample sorted(std::vector<Observation> obs) {
  return sort_with_concomitants(CensoredSample(std::move(obs)));
}

}  // namespace

TEST_CASE("empirical H and H1") {
  auto s = sorted({{1, 1}, {2, 0}, {3, 1}});
  auto H = empirical_H(s);
  CHECK(H.at(2.0) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(1.0 - H.left_limit(2.0) == Approx((3.0 - 2.0 + 1.0) / 3.0).epsilon(1e-15));
  CHECK(H.at(0.5) == 0.0);
  CHECK(H.at(3.0) == 1.0);

  auto H1 = empirical_H1(s);
  CHECK(H1.at(2.5) == Approx(1.0 / 3.0).epsilon(1e-15));

  CHECK(empirical_H(sorted({{5, 1}})).at(4.9) == 0.0);
}

TEST_CASE("H1 degenerates with all or no indicators") {
  auto all = sorted({{1, 1}, {2, 1}, {4, 1}});
  auto none = sorted({{1, 0}, {2, 0}, {4, 0}});
  for (double x : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 9.0}) {
    CHECK(empirical_H1(all).at(x) == empirical_H(all).at(x));
    CHECK(empirical_H1(none).at(x) == 0.0);
  }
}

TEST_CASE("Kaplan-Meier hand values") {
  auto s = sorted({{1, 1}, {2, 0}, {3, 1}});
  CHECK(kaplan_meier_survival(s, 1.0) == Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(kaplan_meier_survival(s, 2.0) == Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(kaplan_meier_survival(s, 3.0) == 0.0);
  CHECK(kaplan_meier_survival(s, 0.5) == 1.0);

  auto complete = sorted({{1, 1}, {2, 1}, {3, 1}});
  CHECK(std::abs(kaplan_meier_survival(complete, 2.0) - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("Nelson-Aalen hand values use strict inequality") {
  auto s = sorted({{1, 1}, {2, 0}, {3, 1}});
  SurvivalCurves c(s);
  CHECK(c.nelson_aalen(1.0) == 1.0);
  CHECK(std::abs(c.nelson_aalen(1.5) - std::exp(-1.0 / 3.0)) < 1e-12);
  CHECK(std::abs(c.nelson_aalen(2.0) - std::exp(-1.0 / 3.0)) < 1e-12);
  CHECK(std::abs(c.nelson_aalen(3.0) - std::exp(-1.0 / 3.0)) < 1e-12);
  CHECK(std::abs(c.nelson_aalen(3.5) - std::exp(-4.0 / 3.0)) < 1e-12);
  CHECK(c.nelson_aalen(0.1) == 1.0);

  auto none = sorted({{1, 0}, {2, 0}, {3, 0}});
  for (double z : {0.5, 1.5, 2.5, 10.0}) CHECK(nelson_aalen_survival(none, z) == 1.0);
}

TEST_CASE("index-based values at order statistics") {
  auto s = sorted({{1, 1}, {2, 0}, {3, 1}});
  SurvivalCurves c(s);
  CHECK(c.cumulative_hazard_at(1) == 0.0);
  CHECK(std::abs(c.cumulative_hazard_at(3) - 1.0 / 3.0) < 1e-15);
  CHECK(c.kaplan_meier_at(3) == 0.0);

  // with ties the index rule counts earlier members of the tie group
  auto tied = sorted({{2, 1}, {2, 1}, {5, 1}});
  SurvivalCurves t(tied);
  CHECK(std::abs(t.cumulative_hazard_at(2) - 1.0 / 3.0) < 1e-15);
  CHECK(t.cumulative_hazard(2.0) == 0.0);
  CHECK(std::abs(t.kaplan_meier_at(1) - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(t.kaplan_meier(2.0) - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("survival curve properties on random samples") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> size(1, 300);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = sort_with_concomitants(oracle::random_sample(rng, size(rng), 0.35));
    const auto data = oracle::from(s);
    SurvivalCurves c(s);
    auto H = empirical_H(s);
    auto H1 = empirical_H1(s);

    CHECK(c.nelson_aalen(s.z().front()) == 1.0);
    const bool max_uncensored = s.delta().back() == 1;
    CHECK((c.kaplan_meier(s.z().back()) == 0.0) == max_uncensored);

    std::vector<double> probes = s.z();
    for (std::size_t j = 0; j + 1 < s.size(); ++j) probes.push_back(0.5 * (s.z()[j] + s.z()[j + 1]));
    probes.push_back(s.z().back() * 2.0);
    probes.push_back(s.z().front() / 2.0);

    for (double x : probes) {
      const double na = c.nelson_aalen(x);
      const double km = c.kaplan_meier(x);
      CHECK(na > 0.0);
      CHECK(na >= km - 1e-15);
      CHECK(H1.at(x) <= H.at(x) + 1e-15);
      CHECK(H.at(x) <= 1.0);
      CHECK(std::abs(na - oracle::na(data, x)) < 1e-12);
      CHECK(std::abs(km - oracle::km(data, x)) < 1e-12);

      // integral form: exp(-int_0^x dH1 / Hbar(y-))
      double integral = 0.0;
      for (std::size_t j = 0; j < H1.jump_points.size() && H1.jump_points[j] < x; ++j) {
        const double dH1 = H1.values_after[j] - (j ? H1.values_after[j - 1] : 0.0);
        integral += dH1 / (1.0 - H.left_limit(H1.jump_points[j]));
      }
      CHECK(std::abs(na - std::exp(-integral)) < 1e-12);
    }
  }
}

TEST_CASE("curves are nonincreasing and table dump has one row per distinct z") {
  auto s = sorted({{1, 1}, {2, 0}, {2, 1}, {3, 1}, {7, 0}});
  SurvivalCurves c(s);
  double prev_km = 1.0, prev_na = 1.0;
  for (double x = 0.0; x < 8.0; x += 0.25) {
    CHECK(c.kaplan_meier(x) <= prev_km);
    CHECK(c.nelson_aalen(x) <= prev_na);
    prev_km = c.kaplan_meier(x);
    prev_na = c.nelson_aalen(x);
  }
  auto t = c.to_table();
  CHECK(t.columns == std::vector<std::string>{"z", "km_survival", "na_survival"});
  CHECK(t.rows.size() == 4);
}
