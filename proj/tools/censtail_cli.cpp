// censtail: command-line front end over the C API.
//
//   censtail estimate --input data.csv [--output out.csv] [--k 10,20 | --k-min/--k-max/--k-step]
//                     [--estimators hill,p_hat,efg,worms,mns,kernel] [--kernels biweight,triweight]
//   censtail simulate --config sim.json [--output result.csv] [--json result.json] [--seed N]
//   censtail moments  --kernel biweight --p 0.9 --gamma1 0.4 [--tau1 -1] [--lambda 1]
//   censtail check-kernels [--kernels indicator,biweight,triweight] [--tol 1e-10]
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 internal error.
// CENS_TAIL_THREADS sets the worker count for simulate.

#include <CLI11.hpp>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "censtail/censtail.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

int exit_code(censtail_status s) {
  switch (s) {
    case CENSTAIL_OK: return kOk;
    case CENSTAIL_ERR_CONFIG:
    case CENSTAIL_ERR_INVALID_SPEC:
    case CENSTAIL_ERR_UNKNOWN_KERNEL:
    case CENSTAIL_ERR_DOMAIN:
    case CENSTAIL_ERR_NULL_ARGUMENT: return kUsage;
    case CENSTAIL_ERR_INTERNAL: return kInternal;
    default: return kData;
  }
}

int report(censtail_status s) {
  std::fprintf(stderr, "censtail: %s\n", censtail_last_error());
  return exit_code(s);
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using SamplePtr = std::unique_ptr<censtail_sample, Deleter<censtail_sample, censtail_sample_destroy>>;
using PathPtr = std::unique_ptr<censtail_path, Deleter<censtail_path, censtail_path_destroy>>;
using KernelPtr = std::unique_ptr<censtail_kernel, Deleter<censtail_kernel, censtail_kernel_destroy>>;
using SimPtr =
    std::unique_ptr<censtail_simulation, Deleter<censtail_simulation, censtail_simulation_destroy>>;

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct EstimateArgs {
  std::string input;
  std::string output;
  std::string k_list;
  std::optional<std::size_t> k_min, k_max;
  std::size_t k_step = 1;
  std::string estimators = "hill,p_hat,efg,worms,mns,kernel";
  std::string kernels = "biweight,triweight";
};

int cmd_estimate(const EstimateArgs& a) {
  censtail_sample* raw = nullptr;
  if (auto s = censtail_sample_read_csv(a.input.c_str(), &raw)) return report(s);
  SamplePtr sample(raw);
  const std::size_t n = censtail_sample_size(sample.get());

  std::vector<std::size_t> grid;
  if (!a.k_list.empty()) {
    for (const auto& item : split(a.k_list)) {
      try {
        std::size_t pos = 0;
        long long v = std::stoll(item, &pos);
        if (pos != item.size() || v < 0) throw std::invalid_argument(item);
        grid.push_back(static_cast<std::size_t>(v));
      } catch (const std::exception&) {
        std::fprintf(stderr, "censtail: --k: cannot parse '%s'\n", item.c_str());
        return kUsage;
      }
    }
  } else {
    const std::size_t lo = a.k_min.value_or(1);
    const std::size_t hi = a.k_max.value_or(n > 1 ? n - 1 : 0);
    if (a.k_step == 0) {
      std::fprintf(stderr, "censtail: --k-step must be >= 1\n");
      return kUsage;
    }
    for (std::size_t k = lo; k <= hi; k += a.k_step) grid.push_back(k);
  }

  // p_hat is always reported alongside the tail-index estimates
  auto names = split(a.estimators);
  std::string estimators = "p_hat";
  for (const auto& e : names) {
    if (e != "p_hat") estimators += "," + e;
  }

  censtail_path* path_raw = nullptr;
  if (auto s = censtail_path_compute(sample.get(), grid.data(), grid.size(), estimators.c_str(),
                                     a.kernels.c_str(), &path_raw)) {
    return report(s);
  }
  PathPtr path(path_raw);
  if (auto s = censtail_path_write_csv(path.get(), a.output.empty() ? nullptr : a.output.c_str())) {
    return report(s);
  }
  return kOk;
}

struct SimulateArgs {
  std::string config;
  std::string output;
  std::string json;
  std::optional<std::uint64_t> seed;
};

unsigned threads_from_env() {
  const char* env = std::getenv("CENS_TAIL_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  unsigned long v = std::strtoul(env, &end, 10);
  return (end && *end == '\0') ? static_cast<unsigned>(v) : 0;
}

int cmd_simulate(const SimulateArgs& a) {
  std::ifstream in(a.config);
  if (!in) {
    std::fprintf(stderr, "censtail: cannot open config '%s'\n", a.config.c_str());
    return kUsage;
  }
  std::stringstream text;
  text << in.rdbuf();

  censtail_simulation* raw = nullptr;
  const std::uint64_t* seed = a.seed ? &*a.seed : nullptr;
  if (auto s = censtail_simulation_run_json(text.str().c_str(), threads_from_env(), seed, &raw)) {
    return report(s);
  }
  SimPtr sim(raw);
  if (auto s = censtail_simulation_write_csv(sim.get(),
                                             a.output.empty() ? nullptr : a.output.c_str())) {
    return report(s);
  }
  if (!a.json.empty()) {
    if (auto s = censtail_simulation_write_json(sim.get(), a.json.c_str())) return report(s);
  }
  return kOk;
}

struct MomentsArgs {
  std::string kernel = "biweight";
  double p = 1.0;
  double gamma1 = 1.0;
  double tau1 = 0.0;
  double lambda = 0.0;
};

int cmd_moments(const MomentsArgs& a) {
  censtail_kernel* raw = nullptr;
  if (auto s = censtail_kernel_builtin(a.kernel.c_str(), &raw)) return report(s);
  KernelPtr kernel(raw);
  double mu = 0.0, sigma2 = 0.0;
  if (auto s = censtail_kernel_moments(kernel.get(), a.p, a.gamma1, a.tau1, a.lambda, &mu, &sigma2)) {
    return report(s);
  }
  std::printf("kernel=%s\nmu_K=%.12g\nsigma2_K=%.12g\n", censtail_kernel_name(kernel.get()), mu,
              sigma2);
  return kOk;
}

int cmd_check_kernels(const std::string& kernels, double tol) {
  int rc = kOk;
  std::printf("kernel,A1,A2,A3,A4,integral\n");
  for (const auto& name : split(kernels)) {
    censtail_kernel* raw = nullptr;
    if (auto s = censtail_kernel_builtin(name.c_str(), &raw)) return report(s);
    KernelPtr kernel(raw);
    censtail_axiom_report r{};
    if (auto s = censtail_kernel_check(kernel.get(), tol, &r)) return report(s);
    auto mark = [](int ok) { return ok ? "pass" : "FAIL"; };
    std::printf("%s,%s,%s,%s,%s,%.17g\n", censtail_kernel_name(kernel.get()), mark(r.monotone),
                mark(r.support), mark(r.normalized), mark(r.bounded), r.integral);
    if (!(r.monotone && r.support && r.normalized && r.bounded)) rc = kData;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail-index estimation for right-censored Pareto-type data"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate tail-index paths from a CSV sample");
  estimate->add_option("--input", est.input, "CSV with columns value,delta")->required();
  estimate->add_option("--output", est.output, "Output CSV (default: stdout)");
  auto* k_opt = estimate->add_option("--k", est.k_list, "Comma-separated k values");
  estimate->add_option("--k-min", est.k_min, "Smallest k (default 1)")->excludes(k_opt);
  estimate->add_option("--k-max", est.k_max, "Largest k (default n-1)")->excludes(k_opt);
  estimate->add_option("--k-step", est.k_step, "k increment")->excludes(k_opt);
  estimate->add_option("--estimators", est.estimators, "hill,p_hat,efg,worms,mns,kernel");
  estimate->add_option("--kernels", est.kernels, "indicator,biweight,triweight");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo study from a JSON config");
  simulate->add_option("--config", sim.config, "Simulation config JSON")->required();
  simulate->add_option("--output", sim.output, "Result CSV (default: stdout)");
  simulate->add_option("--json", sim.json, "Result JSON with config echo");
  simulate->add_option("--seed", sim.seed, "Override the config seed");

  MomentsArgs mom;
  auto* moments = app.add_subcommand("moments", "Asymptotic mean and variance of a kernel estimator");
  moments->add_option("--kernel", mom.kernel, "indicator, biweight or triweight");
  moments->add_option("--p", mom.p, "Proportion of upper non-censored observations")->required();
  moments->add_option("--gamma1", mom.gamma1, "Tail index")->required();
  moments->add_option("--tau1", mom.tau1, "Second-order parameter (<= 0)");
  moments->add_option("--lambda", mom.lambda, "Limit of sqrt(k) A1(h)");

  std::string check_list = "indicator,biweight,triweight";
  double check_tol = 1e-10;
  auto* check = app.add_subcommand("check-kernels", "Verify kernel assumptions [A1]-[A4]");
  check->add_option("--kernels", check_list, "Kernels to check");
  check->add_option("--tol", check_tol, "Tolerance on the kernel integral");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*estimate) return cmd_estimate(est);
  if (*simulate) return cmd_simulate(sim);
  if (*moments) return cmd_moments(mom);
  if (*check) return cmd_check_kernels(check_list, check_tol);
  return kUsage;
}
