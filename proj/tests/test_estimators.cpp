#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "censtail/error.hpp"
#include "censtail/estimators.hpp"
#include "censtail/models.hpp"
#include "oracles.hpp"

using namespace censtail;

namespace {

SortedCensoredSample sorted(std::vector<Observation> obs) {
  return sort_with_concomitants(CensoredSample(std::move(obs)));
}

SortedCensoredSample complete(std::vector<double> z) {
  std::vector<Observation> obs;
  for (double v : z) obs.push_back({v, 1});
  return sorted(obs);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("hill hand values") {
  auto s = complete({1, 2, 4, 8});
  CHECK(std::abs(hill(s, 3) - 2.0 * std::log(2.0)) < 1e-12);
  CHECK(hill(complete({3, 3, 3, 3}), 2) == 0.0);
  CHECK(std::abs(hill(complete({10, 20, 40, 80}), 3) - hill(s, 3)) < 1e-12);
}

TEST_CASE("k outside [1, n-1] is rejected") {
  auto s = complete({1, 2, 4, 8});
  CHECK(code_of([&] { hill(s, 0); }) == ErrorCode::InvalidK);
  CHECK(code_of([&] { hill(s, 4); }) == ErrorCode::InvalidK);
  CHECK(code_of([&] { mns(s, 4); }) == ErrorCode::InvalidK);
  CHECK(code_of([&] { worms(s, 0); }) == ErrorCode::InvalidK);
  CHECK(code_of([&] { kernel_estimator(s, 9, builtin_kernel("K2")); }) == ErrorCode::InvalidK);
  CHECK(code_of([&] { p_hat(s, 5); }) == ErrorCode::InvalidK);
  CHECK(p_hat(s, 4) == 1.0);
}

TEST_CASE("p_hat counts uncensored top observations") {
  auto s = sorted({{1, 1}, {2, 1}, {4, 1}, {8, 0}});
  CHECK(std::abs(p_hat(s, 3) - 2.0 / 3.0) < 1e-15);
  CHECK(p_hat(complete({1, 2, 3}), 2) == 1.0);
  CHECK(p_hat(sorted({{1, 0}, {2, 0}, {3, 0}}), 3) == 0.0);
}

TEST_CASE("efg") {
  auto s = sorted({{1, 1}, {2, 1}, {4, 1}, {8, 0}});
  CHECK(std::abs(efg(s, 3) - 2.0 * std::log(2.0) * 1.5) < 1e-12);
  CHECK(std::abs(efg(s, 3) - 2.079442) < 1e-6);
  auto c = complete({1, 2, 4, 8, 9});
  for (std::size_t k = 1; k < 5; ++k) CHECK(efg(c, k) == hill(c, k));
  auto top_censored = sorted({{1, 1}, {2, 1}, {4, 0}, {8, 0}});
  CHECK(code_of([&] { efg(top_censored, 2); }) == ErrorCode::DegenerateP);
}

TEST_CASE("worms") {
  CHECK(std::abs(worms(complete({1, 2, 4}), 2) - 1.5 * std::log(2.0)) < 1e-12);
  CHECK(worms(complete({5, 5, 5, 5}), 3) == 0.0);
  CHECK(worms(sorted({{5, 1}, {5, 0}, {5, 1}, {5, 1}}), 2) == 0.0);
}

TEST_CASE("mns") {
  const double expected = std::exp(-5.0 / 6.0) * std::log(4.0) + 0.5 * std::exp(-1.0 / 3.0) * std::log(2.0);
  CHECK(std::abs(mns(complete({1, 2, 4}), 2) - expected) < 1e-12);
  CHECK(std::abs(mns(complete({1, 2, 4}), 2) - 0.850812) < 1e-6);
  CHECK(mns(sorted({{1, 1}, {2, 1}, {4, 0}, {8, 0}}), 2) == 0.0);
  CHECK(std::abs(mns(complete({0.1, 0.2, 0.4}), 2) - expected) < 1e-12);
}

TEST_CASE("kernel estimator") {
  auto k1 = builtin_kernel("indicator");
  auto k2 = builtin_kernel("biweight");
  auto s = complete({1, 2, 4});
  CHECK(std::abs(kernel_estimator(s, 2, k1) - 0.850812) < 1e-6);
  CHECK(kernel_estimator(s, 2, k1) == mns(s, 2));

  auto top_censored = sorted({{1, 1}, {2, 1}, {4, 0}, {8, 0}});
  for (const auto& name : builtin_kernel_names()) {
    CHECK(kernel_estimator(top_censored, 2, builtin_kernel(name)) == 0.0);
  }

  auto bad = Kernel::custom(
      "twice", [](double s) { return s >= 0 && s < 1 ? 2.0 : 0.0; },
      [](double s) { return s >= 0 && s <= 1 ? 2.0 : 0.0; }, [](double) { return 0.0; });
  CHECK(code_of([&] { kernel_estimator(s, 2, bad); }) == ErrorCode::KernelAxiomViolation);
  CHECK(std::isfinite(kernel_estimator(s, 2, k2)));
}

TEST_CASE("a ratio of exactly 1 can carry an uncensored term") {
  // threshold Z_{n-k:n} censored, next one up uncensored: R_k = 1 and the
  // i = k term has delta = 1 and a positive log factor, so g'_{K1}(1) must be
  // the left limit 1 for the indicator kernel to reproduce the MNS sum.
  auto s = sorted({{1, 1}, {2, 0}, {3, 1}, {5, 1}});
  const std::size_t k = 2;
  TailSample t(s);
  const double hazard_threshold = t.curves().cumulative_hazard_at(s.size() - k);
  const double hazard_k = t.curves().cumulative_hazard_at(s.size() - k + 1);
  CHECK(hazard_threshold == hazard_k);
  CHECK(s.concomitant(s.size() - k + 1) == 1);
  CHECK(t.kernel_estimator(k, builtin_kernel("indicator")) == t.mns(k));

  auto zero_at_one = Kernel::custom(
      "indicator_open", [](double x) { return x >= 0 && x < 1 ? 1.0 : 0.0; },
      [](double x) { return x >= 0 && x < 1 ? 1.0 : 0.0; }, [](double) { return 0.0; });
  CHECK(t.kernel_estimator(k, zero_at_one) < t.mns(k) - 1e-3);
}

TEST_CASE("estimators match brute-force oracles on random censored samples") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> size(5, 120);
  auto k2 = builtin_kernel("biweight");
  auto k3 = builtin_kernel("triweight");
  for (int trial = 0; trial < 150; ++trial) {
    auto s = sort_with_concomitants(oracle::random_sample(rng, size(rng), 0.25));
    const auto data = oracle::from(s);
    TailSample t(s);
    std::uniform_int_distribution<std::size_t> kd(1, s.size() - 1);
    for (int rep = 0; rep < 3; ++rep) {
      const std::size_t k = kd(rng);
      CAPTURE(k);
      CHECK(std::abs(t.hill(k) - oracle::hill(data, k)) < 1e-12);
      CHECK(std::abs(t.p_hat(k) - oracle::p_hat(data, k)) < 1e-15);
      CHECK(std::abs(t.worms(k) - oracle::worms(data, k)) < 1e-10);
      CHECK(std::abs(t.mns(k) - oracle::mns(data, k)) < 1e-12);
      CHECK(std::abs(t.kernel_estimator(k, k2) - oracle::kernel_integral_form(s, k, k2)) < 1e-12);
      CHECK(std::abs(t.kernel_estimator(k, k3) - oracle::kernel_integral_form(s, k, k3)) < 1e-12);
    }
  }
}

TEST_CASE("complete-data reductions") {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::size_t> size(5, 500);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = sort_with_concomitants(oracle::random_sample(rng, size(rng), 0.0));
    TailSample t(s);
    for (std::size_t k = 1; k < s.size(); k += 1 + s.size() / 17) {
      CHECK(std::abs(t.worms(k) - t.hill(k)) < 1e-12);
      CHECK(t.efg(k) == t.hill(k));
    }
  }
}

TEST_CASE("indicator kernel reproduces MNS exactly") {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> size(5, 500);
  std::uniform_real_distribution<double> rate(0.0, 0.6);
  auto k1 = builtin_kernel("indicator");
  for (int trial = 0; trial < 200; ++trial) {
    auto s = sort_with_concomitants(oracle::random_sample(rng, size(rng), rate(rng)));
    TailSample t(s);
    for (std::size_t k = 1; k < s.size(); k += 1 + s.size() / 11) {
      CHECK(std::abs(t.kernel_estimator(k, k1) - t.mns(k)) <= 1e-12);
    }
  }
}

TEST_CASE("scale invariance") {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> size(5, 200);
  auto specs = make_estimators({"hill", "p_hat", "efg", "worms", "mns", "kernel"},
                               {"indicator", "biweight", "triweight"});
  for (int trial = 0; trial < 30; ++trial) {
    auto raw = oracle::random_sample(rng, size(rng), 0.3);
    TailSample base(sort_with_concomitants(raw));
    auto grid = k_range(1, base.size() - 1);
    auto ref = estimate_path(base, grid, specs);
    for (double c : {1e-3, 1.0, 1e3}) {
      auto scaled = estimate_path(TailSample(sort_with_concomitants(raw.scaled(c))), grid, specs);
      for (std::size_t e = 0; e < specs.size(); ++e) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
          REQUIRE(ref.estimates[e][j].has_value() == scaled.estimates[e][j].has_value());
          if (ref.estimates[e][j]) {
            CHECK(std::abs(*ref.estimates[e][j] - *scaled.estimates[e][j]) <= 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("estimate_path") {
  std::mt19937_64 rng(505);
  RngStream stream(7, 1);
  auto pareto = sort_with_concomitants(sample_censored({ParetoLoss{0.5}, std::nullopt}, 300, stream));
  auto path = estimate_path(pareto, k_range(1, 299), make_estimators({"hill"}, {}));
  REQUIRE(path.names == std::vector<std::string>{"hill"});
  CHECK(path.k_values.size() == 299);
  for (const auto& v : path.column("hill")) {
    REQUIRE(v.has_value());
    CHECK(*v > 0.0);
  }

  auto censored = sort_with_concomitants(oracle::random_sample(rng, 80, 0.3));
  auto both = estimate_path(censored, k_range(1, 79),
                            make_estimators({"mns", "kernel"}, {"indicator"}));
  CHECK(both.column("mns") == both.column("kernel_indicator"));

  auto none = estimate_path(censored, k_range(1, 79), {});
  CHECK(none.names.empty());
  CHECK(none.estimates.empty());
  CHECK(none.to_table().columns == std::vector<std::string>{"k"});

  auto top_censored = sorted({{1, 1}, {2, 1}, {3, 1}, {4, 0}, {8, 0}});
  auto p = estimate_path(top_censored, {1, 2, 3}, make_estimators({"p_hat", "efg"}, {}));
  CHECK(p.column("p_hat")[0] == 0.0);
  CHECK_FALSE(p.column("efg")[0].has_value());
  CHECK_FALSE(p.column("efg")[1].has_value());
  CHECK(p.column("efg")[2].has_value());
  auto table = p.to_table();
  CHECK(std::holds_alternative<std::monostate>(table.rows[0][2]));

  CHECK(code_of([&] { estimate_path(top_censored, {0, 1}, {}); }) == ErrorCode::InvalidK);
  CHECK(code_of([&] { estimate_path(top_censored, {5}, {}); }) == ErrorCode::InvalidK);
  CHECK(code_of([] { make_estimators({"pickands"}, {}); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { make_estimators({"kernel"}, {"cosine"}); }) == ErrorCode::UnknownKernel);
}

TEST_CASE("hill is consistent on complete Pareto samples") {
  const double gamma = 0.5;
  const std::size_t n = 10000;
  const auto k = static_cast<std::size_t>(std::floor(std::pow(n, 0.6)));
  std::vector<double> errors;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed, 0);
    TailSample t(sort_with_concomitants(sample_censored({ParetoLoss{gamma}, std::nullopt}, n, rng)));
    errors.push_back(std::abs(t.hill(k) - gamma));
  }
  std::nth_element(errors.begin(), errors.begin() + 50, errors.end());
  CHECK(errors[50] < 0.05);
}
