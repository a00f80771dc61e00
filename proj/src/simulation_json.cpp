#include <json.hpp>

#include "censtail/error.hpp"
#include "censtail/simulation.hpp"

namespace censtail {
namespace {

using nlohmann::json;

constexpr const char* kConfigSchema = "censtail.simulation.v1";
constexpr const char* kResultSchema = "censtail.simulation-result.v1";

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ConfigError, path + ": " + msg);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const auto& v = field(obj, key, path);
  const std::string p = path.empty() ? key : path + "." + key;
  if (!v.is_number()) fail(p, "expected a number");
  double d = v.get<double>();
  if (!(d > 0.0) || !std::isfinite(d)) fail(p, "must be > 0");
  return d;
}

std::uint64_t count(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<std::string> strings(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) fail(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

ModelSpec parse_model(const json& m) {
  ModelSpec spec{ParetoLoss{1.0}, std::nullopt};
  const auto& loss = field(m, "loss", "model");
  const auto& family = field(loss, "family", "model.loss");
  if (family == "burr") {
    spec.loss = BurrLoss{number(loss, "gamma1", "model.loss"), number(loss, "eta", "model.loss")};
  } else if (family == "pareto") {
    spec.loss = ParetoLoss{number(loss, "gamma1", "model.loss")};
  } else {
    fail("model.loss.family", "expected \"burr\" or \"pareto\"");
  }

  auto it = m.find("censor");
  if (it != m.end() && !it->is_null()) {
    const auto& c = *it;
    if (field(c, "family", "model.censor") != "frechet") {
      fail("model.censor.family", "expected \"frechet\"");
    }
    const bool has_gamma2 = c.contains("gamma2");
    const bool has_p = c.contains("p");
    if (has_gamma2 == has_p) fail("model.censor", "give exactly one of gamma2 or p");
    if (has_gamma2) {
      spec.censor = FrechetCensor{number(c, "gamma2", "model.censor")};
    } else {
      const double p = number(c, "p", "model.censor");
      if (p >= 1.0) fail("model.censor.p", "must be < 1 (omit censor for complete data)");
      spec.censor = FrechetCensor{gamma2_from_p(spec.gamma1(), p)};
    }
  }
  return spec;
}

json model_to_json(const ModelSpec& spec) {
  json j;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BurrLoss>) {
          j["loss"] = {{"family", "burr"}, {"gamma1", m.gamma1}, {"eta", m.eta}};
        } else {
          j["loss"] = {{"family", "pareto"}, {"gamma1", m.gamma1}};
        }
      },
      spec.loss);
  if (spec.censor) {
    j["censor"] = {{"family", "frechet"}, {"gamma2", spec.censor->gamma2}};
  } else {
    j["censor"] = nullptr;
  }
  return j;
}

json config_to_json(const SimulationConfig& c) {
  return {{"schema", kConfigSchema},
          {"model", model_to_json(c.model)},
          {"n", c.n},
          {"replications", c.replications},
          {"k_grid", c.k_grid},
          {"estimators", c.estimators},
          {"kernels", c.kernels},
          {"seed", c.seed},
          {"threads", c.threads}};
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

SimulationConfig parse_simulation_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("(document): ") + e.what());
  }
  if (!doc.is_object()) fail("(document)", "expected an object");

  if (auto it = doc.find("schema"); it != doc.end() && *it != kConfigSchema) {
    fail("schema", std::string("expected \"") + kConfigSchema + "\"");
  }

  SimulationConfig c;
  c.model = parse_model(field(doc, "model", ""));
  c.n = count(field(doc, "n", ""), "n");
  c.replications = count(field(doc, "replications", ""), "replications");

  const auto& grid = field(doc, "k_grid", "");
  if (grid.is_array()) {
    c.k_grid.clear();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      c.k_grid.push_back(count(grid[i], "k_grid[" + std::to_string(i) + "]"));
    }
  } else if (grid.is_object()) {
    const auto lo = count(field(grid, "min", "k_grid"), "k_grid.min");
    const auto hi = count(field(grid, "max", "k_grid"), "k_grid.max");
    const auto step = grid.contains("step") ? count(grid["step"], "k_grid.step") : 1;
    if (step == 0) fail("k_grid.step", "must be >= 1");
    c.k_grid.clear();
    for (auto k = lo; k <= hi; k += step) c.k_grid.push_back(k);
  } else {
    fail("k_grid", "expected an array or {min,max,step}");
  }

  if (doc.contains("estimators")) c.estimators = strings(doc["estimators"], "estimators");
  if (doc.contains("kernels")) c.kernels = strings(doc["kernels"], "kernels");
  if (doc.contains("seed")) c.seed = count(doc["seed"], "seed");
  if (doc.contains("threads")) c.threads = static_cast<unsigned>(count(doc["threads"], "threads"));

  c.validate();
  return c;
}

std::string simulation_config_to_json(const SimulationConfig& config) {
  return config_to_json(config).dump(2);
}

std::string simulation_result_to_json(const SimulationResult& r) {
  json cells = json::array();
  for (std::size_t e = 0; e < r.estimator_names.size(); ++e) {
    for (std::size_t j = 0; j < r.k_values.size(); ++j) {
      const auto& c = r.cells[e][j];
      cells.push_back({{"estimator", r.estimator_names[e]},
                       {"k", r.k_values[j]},
                       {"mean", optional_json(c.mean)},
                       {"bias", optional_json(c.bias)},
                       {"mse", optional_json(c.mse)},
                       {"defined_count", c.defined_count},
                       {"undefined_count", c.undefined_count}});
    }
  }
  json doc = {{"schema", kResultSchema},
              {"config", config_to_json(r.config)},
              {"targets", r.targets},
              {"estimators", r.estimator_names},
              {"runtime_seconds", r.runtime_seconds},
              {"results", cells}};
  return doc.dump(2);
}

}  // namespace censtail
