#include "censtail/models.hpp"

#include <cmath>

#include "censtail/error.hpp"

namespace censtail {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::DomainError, std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

double ModelSpec::gamma1() const {
  return std::visit([](const auto& m) { return m.gamma1; }, loss);
}

double ModelSpec::p() const {
  return censor ? p_from_gammas(gamma1(), censor->gamma2) : 1.0;
}

void ModelSpec::validate() const {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        require_positive(m.gamma1, "gamma1");
        if constexpr (std::is_same_v<T, BurrLoss>) require_positive(m.eta, "eta");
      },
      loss);
  if (censor) require_positive(censor->gamma2, "gamma2");
}

double burr_cdf(double x, double gamma1, double eta) {
  require_positive(gamma1, "gamma1");
  require_positive(eta, "eta");
  if (x <= 0.0) return 0.0;
  return -std::expm1(-eta / gamma1 * std::log1p(std::pow(x, 1.0 / eta)));
}

double burr_quantile(double u, double gamma1, double eta) {
  require_positive(gamma1, "gamma1");
  require_positive(eta, "eta");
  if (!(u >= 0.0 && u < 1.0)) throw Error(ErrorCode::DomainError, "u must lie in [0,1)");
  return std::pow(std::expm1(-gamma1 / eta * std::log1p(-u)), eta);
}

double frechet_cdf(double x, double gamma2) {
  require_positive(gamma2, "gamma2");
  if (x <= 0.0) return 0.0;
  return std::exp(-std::pow(x, -1.0 / gamma2));
}

double frechet_quantile(double u, double gamma2) {
  require_positive(gamma2, "gamma2");
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::DomainError, "u must lie in (0,1)");
  return std::pow(-std::log(u), -gamma2);
}

double pareto_cdf(double x, double gamma1) {
  require_positive(gamma1, "gamma1");
  if (x <= 1.0) return 0.0;
  return -std::expm1(-std::log(x) / gamma1);
}

double pareto_quantile(double u, double gamma1) {
  require_positive(gamma1, "gamma1");
  if (!(u >= 0.0 && u < 1.0)) throw Error(ErrorCode::DomainError, "u must lie in [0,1)");
  return std::exp(-gamma1 * std::log1p(-u));
}

double gamma2_from_p(double gamma1, double p) {
  require_positive(gamma1, "gamma1");
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::DomainError,
                "p must lie in (0,1); complete data has no finite gamma2");
  }
  return p * gamma1 / (1.0 - p);
}

double p_from_gammas(double gamma1, double gamma2) {
  require_positive(gamma1, "gamma1");
  require_positive(gamma2, "gamma2");
  return gamma2 / (gamma1 + gamma2);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_index),
                    static_cast<std::uint32_t>(stream_index >> 32)};
  engine_.seed(seq);
}

double RngStream::uniform_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

CensoredSample sample_censored(const ModelSpec& spec, std::size_t n, RngStream& rng) {
  spec.validate();
  if (n == 0) throw Error(ErrorCode::EmptySample, "sample size must be >= 1");
  std::vector<Observation> obs(n);
  for (auto& o : obs) {
    const double u = rng.uniform_open();
    const double x = std::visit(
        [u](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, BurrLoss>) return burr_quantile(u, m.gamma1, m.eta);
          else return pareto_quantile(u, m.gamma1);
        },
        spec.loss);
    if (spec.censor) {
      const double c = frechet_quantile(rng.uniform_open(), spec.censor->gamma2);
      o = {std::min(x, c), x <= c ? 1 : 0};
    } else {
      o = {x, 1};
    }
  }
  return CensoredSample(std::move(obs));
}

}  // namespace censtail
