#include "qthermo/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qthermo/two_spin_model.hpp"

namespace qthermo::cli {
namespace {

using nlohmann::json;

void require_keys(const json& object, const std::set<std::string>& allowed, const char* where) {
  if (!object.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& item : object.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

double number(const json& value, const std::string& what) {
  if (!value.is_number()) throw ConfigError(what + " must be a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw ConfigError(what + " must be finite");
  return x;
}

template <class Enum>
Enum choice(const json& value, const std::map<std::string, Enum>& options, const char* what) {
  if (!value.is_string()) throw ConfigError(std::string(what) + " must be a string");
  const auto it = options.find(value.get<std::string>());
  if (it == options.end()) {
    throw ConfigError(std::string(what) + " '" + value.get<std::string>() + "' is not recognised");
  }
  return it->second;
}

Complex entry(const json& value, const std::string& what) {
  if (value.is_number()) return {number(value, what), 0.0};
  if (value.is_array() && value.size() == 2) {
    return {number(value[0], what), number(value[1], what)};
  }
  throw ConfigError(what + " entries must be numbers or [re, im] pairs");
}

Operator matrix_from(const json& section, const std::string& key, std::size_t side) {
  if (!section.contains(key)) throw ConfigError("matrices." + key + " is required");
  const json& list = section.at(key);
  if (!list.is_array() || list.size() != side * side) {
    throw ConfigError("matrices." + key + " must list " + std::to_string(side * side) +
                      " row-major entries");
  }
  const auto n = static_cast<Eigen::Index>(side);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = entry(list[static_cast<std::size_t>(i * n + j)], "matrices." + key);
    }
  }
  Operator op(std::move(m));
  if (!op.is_hermitian()) throw ConfigError("matrices." + key + " is not Hermitian");
  return op;
}

QuenchSpec custom_spec(const json& section, QuenchKind kind, double beta, FinalMode mode) {
  static const std::map<QuenchKind, std::set<std::string>> keys{
      {QuenchKind::SystemQuench, {"dims", "h_s_a", "h_s_b", "h_r", "v"}},
      {QuenchKind::InteractionQuench, {"dims", "h_s", "h_r", "v"}},
      {QuenchKind::General, {"dims", "h_s_a", "h_s_b", "h_r", "v_a", "v_b"}}};
  require_keys(section, keys.at(kind), "matrices");
  const json& dims = section.value("dims", json());
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_unsigned() ||
      !dims[1].is_number_unsigned() || dims[0].get<std::size_t>() == 0 ||
      dims[1].get<std::size_t>() == 0) {
    throw ConfigError("matrices.dims must be two positive integers [d_S, d_R]");
  }
  const auto d_s = dims[0].get<std::size_t>();
  const auto d_r = dims[1].get<std::size_t>();
  const InverseTemperature b(beta);
  const Operator h_r = matrix_from(section, "h_r", d_r);

  QuenchSpec spec = [&] {
    switch (kind) {
      case QuenchKind::SystemQuench:
        return make_system_quench(matrix_from(section, "h_s_a", d_s),
                                  matrix_from(section, "h_s_b", d_s), h_r,
                                  matrix_from(section, "v", d_s * d_r), b);
      case QuenchKind::InteractionQuench:
        return make_interaction_quench(matrix_from(section, "h_s", d_s), h_r,
                                       matrix_from(section, "v", d_s * d_r), b);
      case QuenchKind::General:
        break;
    }
    QuenchSpec general{
        bipartite_hamiltonian(matrix_from(section, "h_s_a", d_s), h_r,
                              matrix_from(section, "v_a", d_s * d_r)),
        bipartite_hamiltonian(matrix_from(section, "h_s_b", d_s), h_r,
                              matrix_from(section, "v_b", d_s * d_r)),
        h_r, b, QuenchKind::General};
    return general;
  }();
  spec.final_mode = mode;
  validate(spec);
  return spec;
}

void set_tolerance(RunConfig& config, const std::string& name, double value) {
  if (!default_tolerances().count(name)) throw ConfigError("unknown tolerance '" + name + "'");
  if (!std::isfinite(value) || value < 0.0) {
    throw ConfigError("tolerance '" + name + "' must be a finite non-negative number");
  }
  config.tolerances[name] = value;
}

double param(const std::map<std::string, double>& values, const std::string& name) {
  const auto it = values.find(name);
  if (it == values.end()) throw ConfigError("parameter '" + name + "' is missing");
  return it->second;
}

}  // namespace

std::vector<double> grid_points(const SweepAxis& axis) {
  std::vector<double> points(static_cast<std::size_t>(axis.count));
  const double step = (axis.stop - axis.start) / (axis.count - 1);
  for (int i = 0; i < axis.count; ++i) points[static_cast<std::size_t>(i)] = axis.start + i * step;
  points.back() = axis.stop;
  return points;
}

const Tolerances& default_tolerances() {
  static const Tolerances defaults{
      {"oracle_rel", 1e-8},        // engine vs closed form, relative
      {"oracle_abs", 1e-10},       // engine vs closed form, absolute floor
      {"second_law", kSecondLawTolerance},
      {"violation", kViolationThreshold},
      {"diss_floor", 1e-10},       // W_diff, W_H* dissipation floor
      {"first_law", kFirstLawTolerance},
      {"relative_entropy", 1e-8},  // beta * diss vs D residuals
      {"heat_bound", 1e-9},        // Q <= dS / beta slack
      {"weak_hstar", 1e-10},       // |H* - H_S| at V = 0
      {"weak_estar", 1e-7},        // |E* - H_S| at V = 0
      {"weak_udiff", 1e-9},        // |U_diff - U_S^0| at V = 0
      {"global_gibbs", 1e-6},      // |U_E* - U_diff| at global Gibbs
      {"commuting_hstar", 1e-9},   // |W_diff - W_H*| for commuting quenches
      {"commuting_estar", 1e-7},   // |W_diff - W_E*| for commuting quenches
      {"factorization", 1e-9},
      {"reduced_state", 1e-9},
      {"entropy_match", 1e-10},    // |dS_diff - dS_E*| on the two-spin model
      {"coincide", 1e-7}};         // pairwise work spread when chi = 0
  return defaults;
}

double RunConfig::tol(std::string_view name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) throw ConfigError("unknown tolerance '" + std::string(name) + "'");
  return it->second;
}

const std::vector<std::string>& two_spin_parameter_names(QuenchKind kind) {
  static const std::vector<std::string> system{"epsilon_a", "epsilon_b", "alpha", "gamma", "chi"};
  static const std::vector<std::string> interaction{"epsilon", "alpha", "gamma_b", "chi_b"};
  static const std::vector<std::string> none;
  switch (kind) {
    case QuenchKind::SystemQuench:
      return system;
    case QuenchKind::InteractionQuench:
      return interaction;
    case QuenchKind::General:
      break;
  }
  return none;
}

QuenchSpec two_spin_spec(const RunConfig& config, const std::map<std::string, double>& values) {
  QuenchSpec spec = [&] {
    if (config.quench == QuenchKind::SystemQuench) {
      const two_spin::TwoSpinParams p{param(values, "epsilon_a"), param(values, "alpha"),
                                      param(values, "gamma"), param(values, "chi"), config.beta};
      return two_spin::system_quench(p, param(values, "epsilon_b"));
    }
    return two_spin::interaction_quench(param(values, "epsilon"), param(values, "alpha"),
                                        param(values, "gamma_b"), param(values, "chi_b"),
                                        config.beta);
  }();
  spec.final_mode = config.final_mode;
  return spec;
}

two_spin::OracleLedger two_spin_oracle(const RunConfig& config,
                                       const std::map<std::string, double>& values) {
  if (config.quench == QuenchKind::SystemQuench) {
    const two_spin::TwoSpinParams p{param(values, "epsilon_a"), param(values, "alpha"),
                                    param(values, "gamma"), param(values, "chi"), config.beta};
    return two_spin::system_quench_ledger(p, param(values, "epsilon_b"));
  }
  return two_spin::interaction_quench_ledger(param(values, "epsilon"), param(values, "alpha"),
                                             param(values, "gamma_b"), param(values, "chi_b"),
                                             config.beta);
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(root,
               {"mode", "model", "quench", "beta", "seed", "parameters", "sweep", "output",
                "tolerances", "final_mode", "t_f", "matrices", "audit"},
               "config");

  RunConfig config;
  if (root.contains("mode")) {
    config.mode = choice<Mode>(root["mode"],
                               {{"run", Mode::Run},
                                {"sweep", Mode::Sweep},
                                {"audit", Mode::Audit},
                                {"compare", Mode::Compare}},
                               "mode");
  }
  if (root.contains("model")) {
    config.model = choice<Model>(
        root["model"], {{"two_spin", Model::TwoSpin}, {"custom_matrix", Model::CustomMatrix}},
        "model");
  }
  if (root.contains("quench")) {
    config.quench = choice<QuenchKind>(root["quench"],
                                       {{"system", QuenchKind::SystemQuench},
                                        {"interaction", QuenchKind::InteractionQuench},
                                        {"general", QuenchKind::General}},
                                       "quench");
  }
  if (root.contains("beta")) config.beta = number(root["beta"], "beta");
  if (!(config.beta > 0.0)) throw ConfigError("beta must be positive");
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
    config.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("output")) {
    if (!root["output"].is_string()) throw ConfigError("output must be a path string");
    config.output = root["output"].get<std::string>();
  }

  if (root.contains("final_mode")) {
    const std::string mode = root["final_mode"].is_string() ? root["final_mode"].get<std::string>() : "";
    if (mode == "unitary") {
      if (!root.contains("t_f")) throw ConfigError("unitary final mode needs t_f");
      config.final_mode = Unitary{number(root["t_f"], "t_f")};
    } else if (mode != "equilibrated") {
      throw ConfigError("final_mode must be 'equilibrated' or 'unitary'");
    }
  }

  if (root.contains("parameters")) {
    const json& params = root["parameters"];
    if (!params.is_object()) throw ConfigError("parameters must be an object");
    for (const auto& item : params.items()) {
      config.parameters[item.key()] = number(item.value(), "parameters." + item.key());
    }
  }

  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    require_keys(s, {"variable", "start", "stop", "count"}, "sweep");
    if (!s.contains("variable") || !s["variable"].is_string()) {
      throw ConfigError("sweep.variable must name a parameter");
    }
    SweepAxis axis;
    axis.variable = s["variable"].get<std::string>();
    axis.start = number(s.value("start", json()), "sweep.start");
    axis.stop = number(s.value("stop", json()), "sweep.stop");
    if (!s.contains("count") || !s["count"].is_number_integer()) {
      throw ConfigError("sweep.count must be an integer");
    }
    axis.count = s["count"].get<int>();
    if (axis.count < 2) throw ConfigError("sweep.count must be at least 2");
    if (axis.start == axis.stop) throw ConfigError("sweep.start and sweep.stop must differ");
    config.sweep = axis;
  }

  if (root.contains("audit")) {
    const json& a = root["audit"];
    require_keys(a, {"quenches", "samples", "max_d_r", "beta_min", "beta_max", "coupling_scale"},
                 "audit");
    auto count = [&](const char* key, int fallback) {
      if (!a.contains(key)) return fallback;
      if (!a[key].is_number_integer() || a[key].get<int>() < 1) {
        throw ConfigError(std::string("audit.") + key + " must be a positive integer");
      }
      return a[key].get<int>();
    };
    config.audit.quenches = count("quenches", config.audit.quenches);
    config.audit.samples = count("samples", config.audit.samples);
    config.audit.max_d_r = static_cast<std::size_t>(count("max_d_r", 4));
    if (config.audit.max_d_r < 2) throw ConfigError("audit.max_d_r must be at least 2");
    if (a.contains("beta_min")) config.audit.beta_min = number(a["beta_min"], "audit.beta_min");
    if (a.contains("beta_max")) config.audit.beta_max = number(a["beta_max"], "audit.beta_max");
    if (a.contains("coupling_scale")) {
      config.audit.coupling_scale = number(a["coupling_scale"], "audit.coupling_scale");
    }
    if (!(config.audit.beta_min > 0.0) || config.audit.beta_max < config.audit.beta_min) {
      throw ConfigError("audit beta range must satisfy 0 < beta_min <= beta_max");
    }
  }

  if (config.model == Model::CustomMatrix) {
    if (!root.contains("matrices")) throw ConfigError("custom_matrix model needs a matrices section");
    try {
      config.custom = custom_spec(root["matrices"], config.quench, config.beta, config.final_mode);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(std::string("matrices: ") + e.what());
    }
  } else if (config.mode != Mode::Audit) {
    if (root.contains("matrices")) throw ConfigError("matrices are only read for custom_matrix");
    if (config.quench == QuenchKind::General) {
      throw ConfigError("the two_spin model supports system and interaction quenches only");
    }
    const auto& names = two_spin_parameter_names(config.quench);
    for (const auto& [key, value] : config.parameters) {
      if (std::find(names.begin(), names.end(), key) == names.end()) {
        throw ConfigError("parameter '" + key + "' does not belong to this quench");
      }
    }
    for (const auto& name : names) {
      const bool swept = config.sweep && config.sweep->variable == name;
      if (!swept && !config.parameters.count(name)) {
        throw ConfigError("parameter '" + name + "' is missing");
      }
    }
    if (config.sweep &&
        std::find(names.begin(), names.end(), config.sweep->variable) == names.end()) {
      throw ConfigError("sweep.variable '" + config.sweep->variable + "' is not a parameter");
    }
  }

  if (root.contains("tolerances")) {
    if (!root["tolerances"].is_object()) throw ConfigError("tolerances must be an object");
    for (const auto& item : root["tolerances"].items()) {
      set_tolerance(config, item.key(), number(item.value(), "tolerances." + item.key()));
    }
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void apply_tolerance_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("tolerance override must be name=value");
  const std::string name = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError("tolerance '" + name + "' needs a number, got '" + text + "'");
  }
  set_tolerance(config, name, value);
}

}  // namespace qthermo::cli
