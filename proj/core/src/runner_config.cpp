#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinbatt/errors.hpp"
#include "spinbatt/runner.hpp"

// Flat key=value scenario format: parsing, validation, echoing.

namespace spinbatt {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Accepts plain numbers plus pi forms: "pi", "pi/6", "2pi/3", "-0.5pi".
double parse_number(const std::string& key, const std::string& raw) {
  const std::string token = trim(raw);
  if (token.empty()) throw ConfigError(key, "empty numeric value");
  const auto pi_pos = token.find("pi");
  try {
    if (pi_pos == std::string::npos) {
      std::size_t used = 0;
      const double value = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return value;
    }
    double coeff = 1.0;
    const std::string pre = trim(token.substr(0, pi_pos));
    if (pre == "-") {
      coeff = -1.0;
    } else if (!pre.empty()) {
      coeff = std::stod(pre);
    }
    double divisor = 1.0;
    const std::string post = trim(token.substr(pi_pos + 2));
    if (!post.empty()) {
      if (post.front() != '/') throw std::invalid_argument(token);
      divisor = std::stod(trim(post.substr(1)));
    }
    return coeff * std::numbers::pi / divisor;
  } catch (const std::exception&) {
    throw ConfigError(key, "cannot parse number '" + token + "'");
  }
}

// Scalar, comma list, or start:stop:step range (stop inclusive).
std::vector<double> parse_grid(const std::string& key, const std::string& raw) {
  std::vector<double> values;
  for (const std::string& part : split(raw, ',')) {
    const std::string token = trim(part);
    const auto pieces = split(token, ':');
    if (pieces.size() == 1) {
      values.push_back(parse_number(key, token));
    } else if (pieces.size() == 3) {
      const double start = parse_number(key, pieces[0]);
      const double stop = parse_number(key, pieces[1]);
      const double step = parse_number(key, pieces[2]);
      if (!(step > 0.0) || stop < start) {
        throw ConfigError(key, "range requires start <= stop and step > 0");
      }
      const auto count =
          static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
      for (long long i = 0; i < count; ++i) {
        values.push_back(std::min(start + static_cast<double>(i) * step, stop));
      }
    } else {
      throw ConfigError(key, "expected value, list, or start:stop:step");
    }
  }
  if (values.empty()) throw ConfigError(key, "no values given");
  for (double v : values) {
    if (!std::isfinite(v)) throw ConfigError(key, "values must be finite");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw ConfigError(key, "grid must be strictly ascending");
    }
  }
  return values;
}

double parse_scalar(const std::string& key, const std::string& raw) {
  const auto values = parse_grid(key, raw);
  if (values.size() != 1) throw ConfigError(key, "expected a single value");
  return values.front();
}

long long parse_int(const std::string& key, const std::string& raw) {
  try {
    std::size_t used = 0;
    const long long value = std::stoll(trim(raw), &used);
    if (used != trim(raw).size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw ConfigError(key, "cannot parse integer '" + trim(raw) + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected true/false");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& raw) {
  std::vector<int> values;
  for (const std::string& part : split(raw, ',')) {
    values.push_back(static_cast<int>(parse_int(key, part)));
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw ConfigError(key, "list must be strictly ascending");
    }
  }
  return values;
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string join_values(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_value(values[i]);
  }
  return out;
}

}  // namespace

bool ScenarioConfig::disorder_active() const {
  return std::any_of(sigma_values.begin(), sigma_values.end(),
                     [](double s) { return s > 0.0; });
}

PowerSearchSettings ScenarioConfig::power_settings() const {
  return PowerSearchSettings{t_max, coarse_step, refine_tol};
}

KeyValues parse_flat_config(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no),
                        "expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no),
                        "expected 'key = value'");
    }
    kv[key] = value;
  }
  return kv;
}

ScenarioConfig make_scenario(const KeyValues& kv) {
  static const std::vector<std::string> known = {
      "model", "n", "two_j", "lambda", "gamma", "phi", "beta", "sigma",
      "time", "omega", "h", "realizations", "seed", "sweep", "measure",
      "kind", "t_max", "coarse_step", "refine_tol", "out", "dim_cap",
      "thermal_on_raw", "bbh_charger_omega_scope", "preset"};
  for (const auto& [key, value] : kv) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(key, "unknown key");
    }
  }

  const auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  ScenarioConfig cfg;

  const std::string* model = get("model");
  if (!model) throw ConfigError("model", "required (xy or bbh)");
  if (*model == "xy") {
    cfg.model = ModelKind::kXY;
  } else if (*model == "bbh") {
    cfg.model = ModelKind::kBBH;
  } else {
    throw ConfigError("model", "expected xy or bbh, got '" + *model + "'");
  }

  if (const auto* v = get("n")) cfg.n_sites = static_cast<int>(parse_int("n", *v));
  if (cfg.n_sites < 2) throw ConfigError("n", "chain length must be >= 2");

  const std::string* two_j = get("two_j");
  if (!two_j) throw ConfigError("two_j", "required (list of 2j integers)");
  cfg.two_j_list = parse_int_list("two_j", *two_j);
  for (int tj : cfg.two_j_list) {
    if (tj < 1) throw ConfigError("two_j", "entries must be >= 1");
  }

  const std::string* lambda = get("lambda");
  if (!lambda) throw ConfigError("lambda", "required");
  cfg.lambda_values = parse_grid("lambda", *lambda);

  if (const auto* v = get("gamma")) {
    if (cfg.model != ModelKind::kXY) {
      throw ConfigError("gamma", "only valid for the xy model");
    }
    cfg.gamma_values = parse_grid("gamma", *v);
  }
  if (const auto* v = get("phi")) {
    if (cfg.model != ModelKind::kBBH) {
      throw ConfigError("phi", "only valid for the bbh model");
    }
    cfg.phi_values = parse_grid("phi", *v);
  }
  if (const auto* v = get("beta")) {
    cfg.beta_values = parse_grid("beta", *v);
    for (double b : cfg.beta_values) {
      if (b < 0.0) throw ConfigError("beta", "must be >= 0");
    }
  }
  if (const auto* v = get("sigma")) {
    cfg.sigma_values = parse_grid("sigma", *v);
    for (double s : cfg.sigma_values) {
      if (s < 0.0) throw ConfigError("sigma", "must be >= 0");
    }
  }
  if (const auto* v = get("time")) cfg.time_values = parse_grid("time", *v);
  if (const auto* v = get("omega")) cfg.omega = parse_scalar("omega", *v);
  if (const auto* v = get("h")) cfg.h = parse_scalar("h", *v);
  if (const auto* v = get("realizations")) {
    cfg.realizations = static_cast<int>(parse_int("realizations", *v));
    if (cfg.realizations < 1) throw ConfigError("realizations", "must be >= 1");
  }
  if (const auto* v = get("seed")) {
    cfg.seed = static_cast<std::uint64_t>(parse_int("seed", *v));
  }
  if (const auto* v = get("t_max")) {
    cfg.t_max = parse_scalar("t_max", *v);
    if (!(*cfg.t_max > 0.0)) throw ConfigError("t_max", "must be > 0");
  }
  if (const auto* v = get("coarse_step")) {
    cfg.coarse_step = parse_scalar("coarse_step", *v);
    if (!(cfg.coarse_step > 0.0)) throw ConfigError("coarse_step", "must be > 0");
  }
  if (const auto* v = get("refine_tol")) {
    cfg.refine_tol = parse_scalar("refine_tol", *v);
    if (!(cfg.refine_tol > 0.0)) throw ConfigError("refine_tol", "must be > 0");
  }
  if (const auto* v = get("out")) cfg.out = *v;
  if (const auto* v = get("dim_cap")) {
    const long long cap = parse_int("dim_cap", *v);
    if (cap < 2) throw ConfigError("dim_cap", "must be >= 2");
    cfg.dim_cap = static_cast<std::size_t>(cap);
  }
  if (const auto* v = get("thermal_on_raw")) {
    cfg.thermal_on_raw = parse_bool("thermal_on_raw", *v);
  }
  if (const auto* v = get("bbh_charger_omega_scope")) {
    if (*v == "full") {
      cfg.omega_scope = OmegaScope::kFull;
    } else if (*v == "linear-only") {
      cfg.omega_scope = OmegaScope::kLinearOnly;
    } else {
      throw ConfigError("bbh_charger_omega_scope",
                        "expected full or linear-only");
    }
  }
  if (const auto* v = get("preset")) cfg.preset_name = *v;

  if (const auto* v = get("kind")) {
    if (*v == "sweep") {
      cfg.kind = ScenarioKind::kSweep;
    } else if (*v == "lambda_max") {
      cfg.kind = ScenarioKind::kLambdaMax;
    } else if (*v == "beta_critical") {
      cfg.kind = ScenarioKind::kBetaCritical;
    } else if (*v == "gamma_critical") {
      cfg.kind = ScenarioKind::kGammaCritical;
    } else {
      throw ConfigError("kind", "expected sweep, lambda_max, beta_critical "
                                "or gamma_critical");
    }
  }

  if (const auto* v = get("measure")) {
    if (*v == "pmax") {
      cfg.measure = Measure::kPMax;
    } else if (*v == "work") {
      cfg.measure = Measure::kWork;
    } else {
      throw ConfigError("measure", "expected pmax or work");
    }
  }

  if (const auto* v = get("sweep")) {
    if (*v == "lambda") {
      cfg.sweep = SweepAxis::kLambda;
    } else if (*v == "gamma") {
      cfg.sweep = SweepAxis::kGamma;
    } else if (*v == "phi") {
      cfg.sweep = SweepAxis::kPhi;
    } else if (*v == "beta") {
      cfg.sweep = SweepAxis::kBeta;
    } else if (*v == "time") {
      cfg.sweep = SweepAxis::kTime;
      if (!get("measure")) cfg.measure = Measure::kWork;
    } else {
      throw ConfigError("sweep", "expected lambda, gamma, phi, beta or time");
    }
  } else if (cfg.kind == ScenarioKind::kSweep) {
    throw ConfigError("sweep", "required for kind = sweep");
  }

  // Cross-field checks.
  if (cfg.kind == ScenarioKind::kSweep) {
    const auto require_scalar = [&](const char* key,
                                    const std::vector<double>& values,
                                    SweepAxis axis) {
      if (cfg.sweep != axis && values.size() > 1) {
        throw ConfigError(key,
                          "only the swept axis may carry a grid (exactly one "
                          "sweep axis)");
      }
    };
    require_scalar("lambda", cfg.lambda_values, SweepAxis::kLambda);
    require_scalar("beta", cfg.beta_values, SweepAxis::kBeta);
    require_scalar("time", cfg.time_values, SweepAxis::kTime);
    if (cfg.sweep == SweepAxis::kBeta && cfg.beta_values.empty()) {
      throw ConfigError("beta", "required for sweep = beta");
    }
    if (cfg.sweep == SweepAxis::kTime) {
      if (cfg.time_values.empty()) {
        throw ConfigError("time", "required for sweep = time");
      }
      if (cfg.measure != Measure::kWork) {
        throw ConfigError("measure", "sweep = time requires measure = work");
      }
    }
    if (cfg.measure == Measure::kWork) {
      if (cfg.sweep != SweepAxis::kTime && cfg.time_values.size() != 1) {
        throw ConfigError("time",
                          "measure = work needs a fixed time unless sweeping "
                          "over time");
      }
      if (cfg.disorder_active()) {
        throw ConfigError("sigma", "disorder is only supported for measure = pmax");
      }
    } else if (!cfg.time_values.empty()) {
      throw ConfigError("time", "only meaningful for measure = work");
    }
    if (cfg.sweep == SweepAxis::kGamma && cfg.model != ModelKind::kXY) {
      throw ConfigError("sweep", "gamma sweep requires the xy model");
    }
    if (cfg.sweep == SweepAxis::kPhi && cfg.model != ModelKind::kBBH) {
      throw ConfigError("sweep", "phi sweep requires the bbh model");
    }
  } else if (cfg.kind == ScenarioKind::kLambdaMax) {
    if (cfg.lambda_values.front() <= 0.0 || cfg.lambda_values.back() < 1.5 - 1e-9) {
      throw ConfigError("lambda", "lambda_max scan must span (0, 1.5]");
    }
    if (cfg.beta_values.size() > 1) {
      throw ConfigError("beta", "lambda_max takes at most one beta");
    }
  } else if (cfg.kind == ScenarioKind::kBetaCritical) {
    if (cfg.beta_values.empty() || cfg.beta_values.front() > 1.0 ||
        cfg.beta_values.back() < 30.0 - 1e-9) {
      throw ConfigError("beta", "beta_critical scan must span [1, 30]");
    }
    if (cfg.lambda_values.size() != 1) {
      throw ConfigError("lambda", "beta_critical requires a single lambda");
    }
  } else if (cfg.kind == ScenarioKind::kGammaCritical) {
    if (cfg.model != ModelKind::kXY) {
      throw ConfigError("model", "gamma_critical requires the xy model");
    }
    const auto& g = cfg.gamma_values;
    if (g.size() < 2 || g.front() < 0.0 || g.back() > 1.0) {
      throw ConfigError("gamma", "gamma_critical scan must lie inside [0, 1]");
    }
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (g[i] - g[i - 1] > 0.02 + 1e-12) {
        throw ConfigError("gamma", "gamma_critical grid step must be <= 0.02");
      }
    }
    if (cfg.two_j_list.size() < 2) {
      throw ConfigError("two_j", "gamma_critical needs at least two spins");
    }
  }

  if (cfg.disorder_active()) {
    for (double s : cfg.sigma_values) {
      if (s <= 0.0) {
        throw ConfigError("sigma",
                          "mix of zero and positive sigma in one scenario");
      }
    }
  }
  if (cfg.omega == 0.0 && !cfg.t_max) {
    throw ConfigError("omega", "omega = 0 requires an explicit t_max");
  }
  return cfg;
}

KeyValues scenario_echo(const ScenarioConfig& cfg) {
  KeyValues kv;
  kv["model"] = cfg.model == ModelKind::kXY ? "xy" : "bbh";
  kv["n"] = std::to_string(cfg.n_sites);
  {
    std::string two_j;
    for (std::size_t i = 0; i < cfg.two_j_list.size(); ++i) {
      if (i) two_j += ',';
      two_j += std::to_string(cfg.two_j_list[i]);
    }
    kv["two_j"] = two_j;
  }
  kv["lambda"] = join_values(cfg.lambda_values);
  if (cfg.model == ModelKind::kXY) kv["gamma"] = join_values(cfg.gamma_values);
  if (cfg.model == ModelKind::kBBH) kv["phi"] = join_values(cfg.phi_values);
  if (!cfg.beta_values.empty()) kv["beta"] = join_values(cfg.beta_values);
  kv["sigma"] = join_values(cfg.sigma_values);
  if (!cfg.time_values.empty()) kv["time"] = join_values(cfg.time_values);
  kv["omega"] = format_value(cfg.omega);
  kv["h"] = format_value(cfg.h);
  if (cfg.disorder_active()) {
    kv["realizations"] = std::to_string(cfg.realizations);
  }
  kv["seed"] = std::to_string(cfg.seed);
  switch (cfg.sweep) {
    case SweepAxis::kLambda: kv["sweep"] = "lambda"; break;
    case SweepAxis::kGamma: kv["sweep"] = "gamma"; break;
    case SweepAxis::kPhi: kv["sweep"] = "phi"; break;
    case SweepAxis::kBeta: kv["sweep"] = "beta"; break;
    case SweepAxis::kTime: kv["sweep"] = "time"; break;
  }
  kv["measure"] = cfg.measure == Measure::kPMax ? "pmax" : "work";
  switch (cfg.kind) {
    case ScenarioKind::kSweep: kv["kind"] = "sweep"; break;
    case ScenarioKind::kLambdaMax: kv["kind"] = "lambda_max"; break;
    case ScenarioKind::kBetaCritical: kv["kind"] = "beta_critical"; break;
    case ScenarioKind::kGammaCritical: kv["kind"] = "gamma_critical"; break;
  }
  if (cfg.t_max) kv["t_max"] = format_value(*cfg.t_max);
  kv["coarse_step"] = format_value(cfg.coarse_step);
  kv["refine_tol"] = format_value(cfg.refine_tol);
  kv["out"] = cfg.out.string();
  kv["dim_cap"] = std::to_string(cfg.dim_cap);
  kv["thermal_on_raw"] = cfg.thermal_on_raw ? "true" : "false";
  if (cfg.model == ModelKind::kBBH) {
    kv["bbh_charger_omega_scope"] =
        cfg.omega_scope == OmegaScope::kFull ? "full" : "linear-only";
  }
  if (!cfg.preset_name.empty()) kv["preset"] = cfg.preset_name;
  return kv;
}

}  // namespace spinbatt
