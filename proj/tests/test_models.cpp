#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "censtail/error.hpp"
#include "censtail/estimators.hpp"
#include "censtail/models.hpp"

using namespace censtail;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("burr quantile") {
  CHECK(burr_quantile(0.0, 0.4, 0.25) == 0.0);
  CHECK(std::abs(burr_quantile(0.5, 0.4, 0.25) - std::pow(std::pow(2.0, 1.6) - 1.0, 0.25)) < 1e-12);
  CHECK(std::abs(burr_quantile(0.5, 0.4, 0.25) - 1.1938524) < 1e-7);
  CHECK(code_of([] { burr_quantile(1.0, 0.4, 0.25); }) == ErrorCode::DomainError);
  CHECK(code_of([] { burr_quantile(-0.1, 0.4, 0.25); }) == ErrorCode::DomainError);
  for (double g : {0.1, 0.4, 1.0, 2.5}) {
    for (double eta : {0.25, 1.0, 4.0}) {
      for (double u = 0.01; u < 1.0; u += 0.01) {
        CHECK(std::abs(burr_cdf(burr_quantile(u, g, eta), g, eta) - u) < 1e-12);
      }
    }
  }
}

TEST_CASE("frechet quantile") {
  CHECK(std::abs(frechet_quantile(std::exp(-1.0), 0.6) - 1.0) < 1e-15);
  CHECK(std::abs(frechet_quantile(0.5, 0.6) - std::pow(std::log(2.0), -0.6)) < 1e-12);
  CHECK(std::abs(frechet_quantile(0.5, 0.6) - 1.2459618) < 1e-7);
  CHECK(code_of([] { frechet_quantile(0.0, 0.6); }) == ErrorCode::DomainError);
  CHECK(code_of([] { frechet_quantile(1.0, 0.6); }) == ErrorCode::DomainError);
  double prev = 0.0;
  for (double u : {1e-300, 1e-100, 1e-10, 1e-3, 0.1, 0.5, 0.9}) {
    const double x = frechet_quantile(u, 0.6);
    CHECK(x > prev);
    prev = x;
  }
  for (double g : {0.2, 0.6, 3.6}) {
    for (double u = 0.01; u < 1.0; u += 0.01) {
      CHECK(std::abs(frechet_cdf(frechet_quantile(u, g), g) - u) < 1e-12);
    }
  }
}

TEST_CASE("pareto quantile") {
  CHECK(pareto_quantile(0.0, 0.5) == 1.0);
  CHECK(std::abs(pareto_quantile(0.75, 0.5) - 2.0) < 1e-15);
  for (double u = 0.0; u < 1.0; u += 0.01) {
    CHECK(std::abs(pareto_cdf(pareto_quantile(u, 1.3), 1.3) - u) < 1e-12);
  }
}

TEST_CASE("gamma2 from p") {
  CHECK(std::abs(gamma2_from_p(0.4, 0.6) - 0.6) < 1e-15);
  CHECK(std::abs(gamma2_from_p(0.4, 0.9) - 3.6) < 1e-14);
  CHECK(gamma2_from_p(0.7, 0.5) == 0.7);
  CHECK(code_of([] { gamma2_from_p(0.4, 1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { gamma2_from_p(0.4, 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { gamma2_from_p(0.0, 0.5); }) == ErrorCode::DomainError);
  for (double p = 0.05; p < 1.0; p += 0.05) {
    CHECK(std::abs(p_from_gammas(0.4, gamma2_from_p(0.4, p)) - p) < 1e-12);
  }
  ModelSpec spec{BurrLoss{0.4, 0.25}, FrechetCensor{3.6}};
  CHECK(std::abs(spec.p() - 0.9) < 1e-15);
  CHECK(spec.gamma1() == 0.4);
  CHECK(ModelSpec{ParetoLoss{1.0}, std::nullopt}.p() == 1.0);
}

TEST_CASE("model validation") {
  CHECK(code_of([] { ModelSpec{BurrLoss{-1.0, 0.25}, std::nullopt}.validate(); }) == ErrorCode::DomainError);
  CHECK(code_of([] { ModelSpec{BurrLoss{0.4, 0.0}, std::nullopt}.validate(); }) == ErrorCode::DomainError);
  CHECK(code_of([] { ModelSpec{ParetoLoss{1.0}, FrechetCensor{0.0}}.validate(); }) == ErrorCode::DomainError);
  CHECK_NOTHROW(ModelSpec{BurrLoss{0.4, 0.25}, FrechetCensor{3.6}}.validate());
}

TEST_CASE("uniform stream") {
  RngStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform_open();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform_open());
    differs_c |= u != c.uniform_open();
    differs_d |= u != d.uniform_open();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("sampler") {
  RngStream rng(1, 1);
  auto complete = sample_censored({BurrLoss{0.4, 0.25}, std::nullopt}, 500, rng);
  CHECK(complete.size() == 500);
  for (const auto& o : complete.observations()) {
    CHECK(o.delta == 1);
    CHECK(o.z > 0.0);
  }

  const ModelSpec spec{BurrLoss{0.4, 0.25}, FrechetCensor{3.6}};
  RngStream r1(9, 2), r2(9, 2);
  auto s1 = sample_censored(spec, 1000, r1);
  auto s2 = sample_censored(spec, 1000, r2);
  for (std::size_t i = 0; i < 1000; ++i) {
    CHECK(s1[i].z == s2[i].z);
    CHECK(s1[i].delta == s2[i].delta);
  }
}

TEST_CASE("censored fraction among the top order statistics") {
  const ModelSpec spec{BurrLoss{0.4, 0.25}, FrechetCensor{gamma2_from_p(0.4, 0.9)}};
  const std::size_t n = 100000;
  const auto k = static_cast<std::size_t>(std::floor(std::pow(n, 0.7)));
  RngStream rng(2024, 1);
  auto sorted = sort_with_concomitants(sample_censored(spec, n, rng));
  CHECK(std::abs((1.0 - p_hat(sorted, k)) - 0.10) <= 0.03);
}

TEST_CASE("hill on complete burr samples") {
  const double gamma = 0.4;
  const std::size_t n = 10000;
  const auto k = static_cast<std::size_t>(std::floor(std::pow(n, 0.55)));
  std::vector<double> estimates;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed, 1);
    estimates.push_back(
        hill(sort_with_concomitants(sample_censored({BurrLoss{gamma, 0.25}, std::nullopt}, n, rng)), k));
  }
  std::nth_element(estimates.begin(), estimates.begin() + 50, estimates.end());
  CHECK(std::abs(estimates[50] - gamma) < 0.05);
}
