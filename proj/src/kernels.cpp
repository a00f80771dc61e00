#include "censtail/kernels.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "censtail/error.hpp"
#include "censtail/sample.hpp"

namespace censtail {
namespace {

constexpr double kAdmissionTol = 1e-8;
constexpr int kGridPoints = 10000;

bool in_support(double s) { return s >= 0.0 && s < 1.0; }
bool in_closed(double s) { return s >= 0.0 && s <= 1.0; }

}  // namespace

Kernel::Kernel(std::string name, KernelKind kind, Fn density, Fn g_prime, Fn g_second)
    : name_(std::move(name)),
      kind_(kind),
      density_(std::move(density)),
      g_prime_(std::move(g_prime)),
      g_second_(std::move(g_second)) {
  axioms_ = std::make_shared<const AxiomReport>(check_kernel_axioms(*this, kAdmissionTol));
}

Kernel Kernel::custom(std::string name, Fn density, Fn g_prime, Fn g_second) {
  if (!density || !g_prime || !g_second) {
    throw Error(ErrorCode::DomainError, "custom kernel needs K, g' and g''");
  }
  return Kernel(std::move(name), KernelKind::Custom, std::move(density), std::move(g_prime),
                std::move(g_second));
}

Kernel builtin_kernel(std::string_view name) {
  if (name == "indicator" || name == "K1") {
    return Kernel(
        "indicator", KernelKind::Indicator,
        [](double s) { return in_support(s) ? 1.0 : 0.0; },
        [](double s) { return in_closed(s) ? 1.0 : 0.0; },
        [](double) { return 0.0; });
  }
  if (name == "biweight" || name == "K2") {
    return Kernel(
        "biweight", KernelKind::Biweight,
        [](double s) {
          if (!in_support(s)) return 0.0;
          double u = 1.0 - s * s;
          return 15.0 / 8.0 * u * u;
        },
        [](double s) {
          if (!in_closed(s)) return 0.0;
          return 15.0 / 8.0 * (1.0 - s * s) * (1.0 - 5.0 * s * s);
        },
        [](double s) {
          if (!in_closed(s)) return 0.0;
          return 15.0 / 8.0 * (20.0 * s * s * s - 12.0 * s);
        });
  }
  if (name == "triweight" || name == "K3") {
    return Kernel(
        "triweight", KernelKind::Triweight,
        [](double s) {
          if (!in_support(s)) return 0.0;
          double u = 1.0 - s * s;
          return 35.0 / 16.0 * u * u * u;
        },
        [](double s) {
          if (!in_closed(s)) return 0.0;
          double u = 1.0 - s * s;
          return 35.0 / 16.0 * u * u * (1.0 - 7.0 * s * s);
        },
        [](double s) {
          if (!in_closed(s)) return 0.0;
          double s2 = s * s;
          return 35.0 / 16.0 * s * (-18.0 + 60.0 * s2 - 42.0 * s2 * s2);
        });
  }
  throw Error(ErrorCode::UnknownKernel, "unknown kernel '" + std::string(name) + "'");
}

std::vector<std::string> builtin_kernel_names() {
  return {"indicator", "biweight", "triweight"};
}

AxiomReport check_kernel_axioms(const Kernel& kernel, double tol) {
  AxiomReport r;

  // [A1] on [0, 1.5]; right-continuity probed with a small forward step.
  r.monotone = true;
  double prev = kernel(0.0);
  for (int j = 0; j <= kGridPoints; ++j) {
    double s = 1.5 * j / kGridPoints;
    double v = kernel(s);
    if (v > prev + 1e-12) r.monotone = false;
    if (std::abs(kernel(s + 1e-12) - v) > 1e-6) r.monotone = false;
    prev = v;
  }

  // [A2]
  r.support = true;
  for (int j = 0; j <= kGridPoints; ++j) {
    double outside_left = -1.0 + 1.0 * j / kGridPoints - 1e-12;
    double outside_right = 1.0 + 1.0 * j / kGridPoints;
    double inside = 1.0 * j / (kGridPoints + 1);
    if (kernel(outside_left) != 0.0 || kernel(outside_right) != 0.0) r.support = false;
    if (!(kernel(inside) >= 0.0)) r.support = false;
  }

  // [A3]
  try {
    r.integral = integrate_unit([&](double s) { return kernel(s); });
    r.normalized = std::abs(r.integral - 1.0) <= tol;
  } catch (const Error&) {
    r.integral = std::numeric_limits<double>::quiet_NaN();
    r.normalized = false;
  }

  // [A4]
  for (int j = 0; j <= kGridPoints; ++j) {
    double s = 1.0 * j / kGridPoints;
    r.sup_density = std::max(r.sup_density, std::abs(kernel(s)));
    r.sup_g_prime = std::max(r.sup_g_prime, std::abs(kernel.g_prime(s)));
    r.sup_g_second = std::max(r.sup_g_second, std::abs(kernel.g_second(s)));
  }
  r.bounded = std::isfinite(r.sup_density) && std::isfinite(r.sup_g_prime) &&
              std::isfinite(r.sup_g_second);
  return r;
}

double integrate_unit(const std::function<double(double)>& f, QuadratureOptions opts) {
  using boost::math::quadrature::gauss_kronrod;
  if (opts.initial_panels == 0) opts.initial_panels = 1;
  const double width = 1.0 / opts.initial_panels;
  double total = 0.0;
  double total_error = 0.0;
  for (unsigned j = 0; j < opts.initial_panels; ++j) {
    double lo = j * width;
    double hi = (j + 1 == opts.initial_panels) ? 1.0 : (j + 1) * width;
    double err = 0.0;
    total += gauss_kronrod<double, 15>::integrate(f, lo, hi, 20, 1e-12, &err);
    total_error += err;
  }
  if (!std::isfinite(total) || total_error > opts.abs_tol) {
    throw Error(ErrorCode::Internal, "quadrature did not reach tolerance (error estimate " +
                                         format_double(total_error) + ")");
  }
  return total;
}

double integrate_power_weighted(double a, const std::function<double(double)>& f,
                                QuadratureOptions opts) {
  if (!(a > -1.0)) throw Error(ErrorCode::DomainError, "power weight must exceed -1");
  if (a == 0.0) return integrate_unit(f, opts);
  if (a > 0.0) {
    // s^a f(0) integrated exactly; the remainder vanishes faster at 0.
    const double f0 = f(0.0);
    return f0 / (1.0 + a) +
           integrate_unit([&](double s) { return std::pow(s, a) * (f(s) - f0); }, opts);
  }
  const double c = 1.0 / (1.0 + a);
  return c * integrate_unit([&](double t) { return f(std::pow(t, c)); }, opts);
}

void MomentSpec::validate() const {
  if (!(tau1 <= 0.0)) throw Error(ErrorCode::InvalidSpec, "tau1 must be <= 0");
  if (!(p > 0.5 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidSpec,
                "p must satisfy 1/2 < p <= 1 (the proportion of upper non-censored "
                "observations has to exceed 50%)");
  }
  if (!(gamma1 > 0.0) || !std::isfinite(gamma1)) {
    throw Error(ErrorCode::InvalidSpec, "gamma1 must be finite and > 0");
  }
  if (!std::isfinite(lambda)) throw Error(ErrorCode::InvalidSpec, "lambda must be finite");
}

double asymptotic_bias(const Kernel& kernel, const MomentSpec& spec, QuadratureOptions opts) {
  spec.validate();
  if (spec.lambda == 0.0) return 0.0;
  return spec.lambda * integrate_power_weighted(-spec.tau1, [&](double s) { return kernel(s); },
                                                opts);
}

double asymptotic_variance(const Kernel& kernel, const MomentSpec& spec,
                           QuadratureOptions opts) {
  spec.validate();
  double integral = integrate_power_weighted(
      1.0 - 1.0 / spec.p,
      [&](double s) {
        double k = kernel(s);
        return k * k;
      },
      opts);
  return spec.gamma1 * spec.gamma1 * integral;
}

}  // namespace censtail
