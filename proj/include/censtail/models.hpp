#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <variant>

#include "censtail/sample.hpp"

namespace censtail {

// F(x) = 1 - (1 + x^(1/eta))^(-eta/gamma1), x > 0
struct BurrLoss {
  double gamma1;
  double eta;
};

// F(x) = 1 - x^(-1/gamma1), x >= 1
struct ParetoLoss {
  double gamma1;
};

// G(x) = exp(-x^(-1/gamma2)), x > 0
struct FrechetCensor {
  double gamma2;
};

using LossModel = std::variant<BurrLoss, ParetoLoss>;

struct ModelSpec {
  LossModel loss;
  std::optional<FrechetCensor> censor;  // nullopt: complete data

  double gamma1() const;
  // gamma2 / (gamma1 + gamma2), or 1 without censoring.
  double p() const;
  void validate() const;
};

double burr_cdf(double x, double gamma1, double eta);
double burr_quantile(double u, double gamma1, double eta);
double frechet_cdf(double x, double gamma2);
double frechet_quantile(double u, double gamma2);
double pareto_cdf(double x, double gamma1);
double pareto_quantile(double u, double gamma1);

// Solves p = gamma2 / (gamma1 + gamma2) for gamma2; needs 0 < p < 1.
double gamma2_from_p(double gamma1, double p);
double p_from_gammas(double gamma1, double gamma2);

// Reproducible uniform stream keyed by (master seed, stream index). Distinct
// indices give independently seeded engines; replication r uses index r.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  // Uniform on the open interval (0,1) with 53-bit resolution.
  double uniform_open();

 private:
  std::mt19937_64 engine_;
};

// Each observation draws the loss first, then the censor, by inverse transform.
CensoredSample sample_censored(const ModelSpec& spec, std::size_t n, RngStream& rng);

}  // namespace censtail
