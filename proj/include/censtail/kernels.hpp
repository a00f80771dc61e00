#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace censtail {

enum class KernelKind { Indicator, Biweight, Triweight, Custom };

struct AxiomReport {
  bool monotone = false;     // [A1] non-increasing, right-continuous on [0, inf)
  bool support = false;      // [A2] zero outside [0,1), nonnegative inside
  bool normalized = false;   // [A3] integral equals 1
  bool bounded = false;      // [A4] K, g', g'' bounded
  double integral = 0.0;
  double sup_density = 0.0;
  double sup_g_prime = 0.0;
  double sup_g_second = 0.0;

  bool passed() const noexcept { return monotone && support && normalized && bounded; }
};

// A kernel K on [0,1) together with derivatives of g_K(s) = s K(s).
//
// g_prime and g_second are defined on the closed interval [0,1]; at s = 1 they
// return the limit from inside the support. The estimator evaluates g' at
// Nelson-Aalen survival ratios, which lie in (0,1].
class Kernel {
 public:
  using Fn = std::function<double(double)>;

  // Axioms are checked once here (at tolerance 1e-8) and cached; the kernel
  // is constructed even if they fail so the report can be inspected.
  static Kernel custom(std::string name, Fn density, Fn g_prime, Fn g_second);

  const std::string& name() const noexcept { return name_; }
  KernelKind kind() const noexcept { return kind_; }

  double operator()(double s) const { return density_(s); }
  double g_prime(double s) const { return g_prime_(s); }
  double g_second(double s) const { return g_second_(s); }

  const AxiomReport& axioms() const noexcept { return *axioms_; }

 private:
  friend Kernel builtin_kernel(std::string_view);
  Kernel(std::string name, KernelKind kind, Fn density, Fn g_prime, Fn g_second);

  std::string name_;
  KernelKind kind_;
  Fn density_;
  Fn g_prime_;
  Fn g_second_;
  std::shared_ptr<const AxiomReport> axioms_;
};

// Accepts "indicator" / "K1", "biweight" / "K2", "triweight" / "K3".
Kernel builtin_kernel(std::string_view name);
std::vector<std::string> builtin_kernel_names();

AxiomReport check_kernel_axioms(const Kernel& kernel, double tol = 1e-10);

struct QuadratureOptions {
  double abs_tol = 1e-10;
  unsigned initial_panels = 4;
};

// Adaptive Gauss-Kronrod over [0,1], started from `initial_panels` equal panels.
double integrate_unit(const std::function<double(double)>& f, QuadratureOptions opts = {});

// integral_0^1 s^a f(s) ds for a > -1. For a < 0 the endpoint singularity is
// removed with t = s^(1+a); for a > 0 the s^a f(0) part is integrated exactly.
double integrate_power_weighted(double a, const std::function<double(double)>& f,
                                QuadratureOptions opts = {});

// Parameters entering the limiting normal law of the kernel estimator.
struct MomentSpec {
  double tau1 = 0.0;    // second-order parameter, <= 0
  double lambda = 0.0;  // limit of sqrt(k) A1(h)
  double p = 1.0;       // proportion of upper non-censored observations, in (1/2, 1]
  double gamma1 = 1.0;  // tail index, > 0

  void validate() const;
};

// mu_K = lambda * integral_0^1 s^(-tau1) K(s) ds
double asymptotic_bias(const Kernel& kernel, const MomentSpec& spec,
                       QuadratureOptions opts = {});
// sigma^2_K = gamma1^2 * integral_0^1 s^(1 - 1/p) K(s)^2 ds
double asymptotic_variance(const Kernel& kernel, const MomentSpec& spec,
                           QuadratureOptions opts = {});

}  // namespace censtail
