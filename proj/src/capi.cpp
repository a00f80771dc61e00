#include "censtail/censtail.h"

#include <cstdio>
#include <iostream>
#include <new>
#include <sstream>
#include <string>

#include "censtail/error.hpp"
#include "censtail/estimators.hpp"
#include "censtail/kernels.hpp"
#include "censtail/sample.hpp"
#include "censtail/simulation.hpp"

struct censtail_sample {
  censtail::TailSample tail;
};

struct censtail_kernel {
  censtail::Kernel kernel;
};

struct censtail_path {
  censtail::EstimatePath path;
};

struct censtail_simulation {
  censtail::SimulationResult result;
};

namespace {

thread_local std::string g_last_error;

censtail_status to_status(censtail::ErrorCode code) {
  using censtail::ErrorCode;
  switch (code) {
    case ErrorCode::EmptySample: return CENSTAIL_ERR_EMPTY_SAMPLE;
    case ErrorCode::NonPositiveObservation: return CENSTAIL_ERR_NON_POSITIVE_OBSERVATION;
    case ErrorCode::InvalidIndicator: return CENSTAIL_ERR_INVALID_INDICATOR;
    case ErrorCode::ParseError: return CENSTAIL_ERR_PARSE;
    case ErrorCode::IoError: return CENSTAIL_ERR_IO;
    case ErrorCode::InvalidK: return CENSTAIL_ERR_INVALID_K;
    case ErrorCode::DegenerateP: return CENSTAIL_ERR_DEGENERATE_P;
    case ErrorCode::ZeroSurvivalAtThreshold: return CENSTAIL_ERR_ZERO_SURVIVAL;
    case ErrorCode::UnknownKernel: return CENSTAIL_ERR_UNKNOWN_KERNEL;
    case ErrorCode::KernelAxiomViolation: return CENSTAIL_ERR_KERNEL_AXIOM;
    case ErrorCode::InvalidSpec: return CENSTAIL_ERR_INVALID_SPEC;
    case ErrorCode::DomainError: return CENSTAIL_ERR_DOMAIN;
    case ErrorCode::ConfigError: return CENSTAIL_ERR_CONFIG;
    case ErrorCode::TooFewPoints: return CENSTAIL_ERR_TOO_FEW_POINTS;
    case ErrorCode::Internal: return CENSTAIL_ERR_INTERNAL;
  }
  return CENSTAIL_ERR_INTERNAL;
}

template <class F>
censtail_status guarded(F&& f) {
  try {
    f();
    return CENSTAIL_OK;
  } catch (const censtail::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CENSTAIL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CENSTAIL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CENSTAIL_ERR_INTERNAL;
  }
}

censtail_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return CENSTAIL_ERR_NULL_ARGUMENT;
}

std::vector<std::string> split_list(const char* list) {
  std::vector<std::string> out;
  if (!list) return out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

void emit(const std::string& text, const char* file) {
  if (!file) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  } else {
    censtail::write_text_atomic(file, text);
  }
}

template <class Method>
censtail_status estimate(const censtail_sample* s, size_t k, double* out, Method m) {
  if (!s) return null_argument("sample");
  if (!out) return null_argument("out");
  return guarded([&] { *out = (s->tail.*m)(k); });
}

}  // namespace

extern "C" {

const char* censtail_status_string(censtail_status status) {
  switch (status) {
    case CENSTAIL_OK: return "ok";
    case CENSTAIL_ERR_EMPTY_SAMPLE: return "empty sample";
    case CENSTAIL_ERR_NON_POSITIVE_OBSERVATION: return "non-positive observation";
    case CENSTAIL_ERR_INVALID_INDICATOR: return "invalid indicator";
    case CENSTAIL_ERR_PARSE: return "parse error";
    case CENSTAIL_ERR_IO: return "i/o error";
    case CENSTAIL_ERR_INVALID_K: return "invalid k";
    case CENSTAIL_ERR_DEGENERATE_P: return "degenerate p";
    case CENSTAIL_ERR_ZERO_SURVIVAL: return "zero survival at threshold";
    case CENSTAIL_ERR_UNKNOWN_KERNEL: return "unknown kernel";
    case CENSTAIL_ERR_KERNEL_AXIOM: return "kernel axiom violation";
    case CENSTAIL_ERR_INVALID_SPEC: return "invalid moment spec";
    case CENSTAIL_ERR_DOMAIN: return "domain error";
    case CENSTAIL_ERR_CONFIG: return "configuration error";
    case CENSTAIL_ERR_TOO_FEW_POINTS: return "too few points";
    case CENSTAIL_ERR_NULL_ARGUMENT: return "null argument";
    case CENSTAIL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* censtail_last_error(void) { return g_last_error.c_str(); }

const char* censtail_version(void) { return "1.0.0"; }

censtail_status censtail_sample_create(const double* z, const int* delta, size_t n,
                                       censtail_sample** out) {
  if (!out) return null_argument("out");
  if (n > 0 && (!z || !delta)) return null_argument("z/delta");
  return guarded([&] {
    censtail::CensoredSample raw({z, n}, {delta, n});
    *out = new censtail_sample{censtail::TailSample(censtail::sort_with_concomitants(raw))};
  });
}

censtail_status censtail_sample_read_csv(const char* path, censtail_sample** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto raw = censtail::read_csv(std::filesystem::path(path));
    *out = new censtail_sample{censtail::TailSample(censtail::sort_with_concomitants(raw))};
  });
}

void censtail_sample_destroy(censtail_sample* sample) { delete sample; }

size_t censtail_sample_size(const censtail_sample* sample) {
  return sample ? sample->tail.size() : 0;
}

censtail_status censtail_sample_sorted(const censtail_sample* s, double* z_out, int* delta_out) {
  if (!s) return null_argument("sample");
  if (!z_out || !delta_out) return null_argument("output arrays");
  const auto& sorted = s->tail.sorted();
  std::copy(sorted.z().begin(), sorted.z().end(), z_out);
  std::copy(sorted.delta().begin(), sorted.delta().end(), delta_out);
  return CENSTAIL_OK;
}

censtail_status censtail_sample_kaplan_meier(const censtail_sample* s, double x, double* out) {
  if (!s) return null_argument("sample");
  if (!out) return null_argument("out");
  *out = s->tail.curves().kaplan_meier(x);
  return CENSTAIL_OK;
}

censtail_status censtail_sample_nelson_aalen(const censtail_sample* s, double z, double* out) {
  if (!s) return null_argument("sample");
  if (!out) return null_argument("out");
  *out = s->tail.curves().nelson_aalen(z);
  return CENSTAIL_OK;
}

censtail_status censtail_sample_write_curves(const censtail_sample* s, const char* path) {
  if (!s) return null_argument("sample");
  return guarded([&] {
    std::ostringstream os;
    censtail::write_csv(s->tail.curves().to_table(), os);
    emit(os.str(), path);
  });
}

censtail_status censtail_hill(const censtail_sample* s, size_t k, double* out) {
  return estimate(s, k, out, &censtail::TailSample::hill);
}
censtail_status censtail_p_hat(const censtail_sample* s, size_t k, double* out) {
  return estimate(s, k, out, &censtail::TailSample::p_hat);
}
censtail_status censtail_efg(const censtail_sample* s, size_t k, double* out) {
  return estimate(s, k, out, &censtail::TailSample::efg);
}
censtail_status censtail_worms(const censtail_sample* s, size_t k, double* out) {
  return estimate(s, k, out, &censtail::TailSample::worms);
}
censtail_status censtail_mns(const censtail_sample* s, size_t k, double* out) {
  return estimate(s, k, out, &censtail::TailSample::mns);
}

censtail_status censtail_kernel_estimate(const censtail_sample* s, size_t k,
                                         const censtail_kernel* kernel, double* out) {
  if (!s) return null_argument("sample");
  if (!kernel) return null_argument("kernel");
  if (!out) return null_argument("out");
  return guarded([&] { *out = s->tail.kernel_estimator(k, kernel->kernel); });
}

censtail_status censtail_kernel_builtin(const char* name, censtail_kernel** out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new censtail_kernel{censtail::builtin_kernel(name)}; });
}

void censtail_kernel_destroy(censtail_kernel* kernel) { delete kernel; }

const char* censtail_kernel_name(const censtail_kernel* kernel) {
  return kernel ? kernel->kernel.name().c_str() : "";
}

censtail_status censtail_kernel_check(const censtail_kernel* kernel, double tol,
                                      censtail_axiom_report* out) {
  if (!kernel) return null_argument("kernel");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto r = censtail::check_kernel_axioms(kernel->kernel, tol);
    *out = {r.monotone, r.support, r.normalized, r.bounded,
            r.integral, r.sup_density, r.sup_g_prime, r.sup_g_second};
  });
}

censtail_status censtail_kernel_moments(const censtail_kernel* kernel, double p, double gamma1,
                                        double tau1, double lambda, double* mu, double* sigma2) {
  if (!kernel) return null_argument("kernel");
  if (!mu || !sigma2) return null_argument("mu/sigma2");
  return guarded([&] {
    censtail::MomentSpec spec{tau1, lambda, p, gamma1};
    double m = censtail::asymptotic_bias(kernel->kernel, spec);
    double v = censtail::asymptotic_variance(kernel->kernel, spec);
    *mu = m;
    *sigma2 = v;
  });
}

censtail_status censtail_path_compute(const censtail_sample* s, const size_t* k, size_t nk,
                                      const char* estimators, const char* kernels,
                                      censtail_path** out) {
  if (!s) return null_argument("sample");
  if (!out) return null_argument("out");
  if (nk > 0 && !k) return null_argument("k");
  return guarded([&] {
    auto specs = censtail::make_estimators(split_list(estimators), split_list(kernels));
    std::vector<std::size_t> grid(k, k + nk);
    *out = new censtail_path{censtail::estimate_path(s->tail, grid, specs)};
  });
}

void censtail_path_destroy(censtail_path* path) { delete path; }

size_t censtail_path_rows(const censtail_path* p) { return p ? p->path.k_values.size() : 0; }

size_t censtail_path_columns(const censtail_path* p) { return p ? p->path.names.size() : 0; }

const char* censtail_path_column_name(const censtail_path* p, size_t column) {
  if (!p || column >= p->path.names.size()) return "";
  return p->path.names[column].c_str();
}

size_t censtail_path_k(const censtail_path* p, size_t row) {
  if (!p || row >= p->path.k_values.size()) return 0;
  return p->path.k_values[row];
}

censtail_status censtail_path_value(const censtail_path* p, size_t row, size_t column,
                                    double* out, int* defined) {
  if (!p) return null_argument("path");
  if (!out || !defined) return null_argument("out/defined");
  if (column >= p->path.names.size() || row >= p->path.k_values.size()) {
    g_last_error = "path index out of range";
    return CENSTAIL_ERR_DOMAIN;
  }
  const auto& v = p->path.estimates[column][row];
  *defined = v.has_value();
  if (v) *out = *v;
  return CENSTAIL_OK;
}

censtail_status censtail_path_write_csv(const censtail_path* p, const char* file) {
  if (!p) return null_argument("path");
  return guarded([&] {
    std::ostringstream os;
    censtail::write_csv(p->path.to_table(), os);
    emit(os.str(), file);
  });
}

censtail_status censtail_simulation_run_json(const char* config_json, unsigned threads,
                                             const uint64_t* seed, censtail_simulation** out) {
  if (!config_json) return null_argument("config_json");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto config = censtail::parse_simulation_config(config_json);
    if (threads) config.threads = threads;
    if (seed) config.seed = *seed;
    *out = new censtail_simulation{censtail::run_simulation(config)};
  });
}

void censtail_simulation_destroy(censtail_simulation* sim) { delete sim; }

censtail_status censtail_simulation_write_csv(const censtail_simulation* sim, const char* file) {
  if (!sim) return null_argument("simulation");
  return guarded([&] {
    std::ostringstream os;
    censtail::write_csv(sim->result.to_table(), os);
    emit(os.str(), file);
  });
}

censtail_status censtail_simulation_write_json(const censtail_simulation* sim, const char* file) {
  if (!sim) return null_argument("simulation");
  return guarded([&] { emit(censtail::simulation_result_to_json(sim->result) + "\n", file); });
}

}  // extern "C"
