#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinbatt/disorder.hpp"
#include "spinbatt/model.hpp"

namespace spinbatt {

enum class SweepAxis { kLambda, kGamma, kPhi, kBeta, kTime };
enum class Measure { kPMax, kWork };
enum class ScenarioKind { kSweep, kLambdaMax, kBetaCritical, kGammaCritical };

/// One sweep/derived-quantity run. Exactly one sweep axis; gamma, phi and
/// sigma may carry short value lists (curve families), everything else is a
/// scalar unless it is the swept axis.
struct ScenarioConfig {
  ModelKind model = ModelKind::kXY;
  int n_sites = 4;
  std::vector<int> two_j_list;
  std::vector<double> lambda_values;
  std::vector<double> gamma_values{0.0};
  std::vector<double> phi_values{0.0};
  std::vector<double> beta_values;  // empty = ground-state initial state
  std::vector<double> sigma_values{0.0};
  std::vector<double> time_values;
  double omega = 1.0;
  double h = 1.0;
  int realizations = 2000;
  std::uint64_t seed = 1;
  SweepAxis sweep = SweepAxis::kLambda;
  Measure measure = Measure::kPMax;
  ScenarioKind kind = ScenarioKind::kSweep;
  std::optional<double> t_max;
  double coarse_step = 0.01;
  double refine_tol = 1e-5;
  std::filesystem::path out = "out";
  std::size_t dim_cap = kDefaultDimCap;
  bool thermal_on_raw = false;
  OmegaScope omega_scope = OmegaScope::kFull;
  std::string preset_name;

  bool disorder_active() const;
  PowerSearchSettings power_settings() const;
};

/// Ordered key=value pairs of the flat config format.
using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines ('#' starts a comment). Throws ConfigError on
/// malformed lines.
KeyValues parse_flat_config(const std::string& text);

/// Builds and fully validates a scenario; unknown keys are rejected.
ScenarioConfig make_scenario(const KeyValues& kv);

/// Resolved scenario serialized back to flat keys (for the manifest).
KeyValues scenario_echo(const ScenarioConfig& cfg);

/// Shipped figure/table configurations, keyed by preset name.
const std::map<std::string, std::string>& preset_configs();

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ScenarioRun {
  ResultTable table;
  std::vector<std::string> warnings;
};

/// Runs the scenario. Deterministic given (cfg, seed), independent of the
/// worker count.
ScenarioRun run_scenario(const ScenarioConfig& cfg, int workers = 0);

struct DerivedQuantity {
  enum class Kind { kLambdaMax, kBetaCritical, kGammaCritical };
  Kind kind;
  double value = 0.0;
  bool found = true;              // beta_critical: a crossing exists in range
  bool at_grid_boundary = false;  // argmax sat on the scanned grid edge
  double peak_pmax = 0.0;         // lambda_max: P_max at the peak
  std::string inputs;
};

/// Coupling at which P_max(lambda) peaks; grid argmax plus a local rescan at
/// step 0.01.
DerivedQuantity find_lambda_max(const ModelConfig& model,
                                const std::vector<double>& lambda_grid,
                                const PowerSearchSettings& s = {},
                                int workers = 0);

/// Smallest beta from which P_max of spin (j + 1/2) exceeds that of spin j
/// and keeps doing so on the rest of the grid; bisection-refined to
/// delta-beta <= 0.5. Not found when the advantage never settles or holds on
/// the whole grid (no crossing in range).
DerivedQuantity find_beta_critical(const ModelConfig& model, double lambda,
                                   const std::vector<double>& beta_grid,
                                   const PowerSearchSettings& s = {},
                                   int workers = 0);

/// Largest gamma for which P_max increases strictly across the given spins
/// at fixed lambda; 0 when no grid point qualifies.
DerivedQuantity find_gamma_critical(const ModelConfig& model, double lambda,
                                    const std::vector<int>& two_j_range,
                                    const std::vector<double>& gamma_grid,
                                    const PowerSearchSettings& s = {},
                                    int workers = 0);

/// CSV payload: 10 significant digits, '.' decimal separator, no locale.
std::string format_csv(const ResultTable& table);

/// Writes results.csv and manifest.json under out_dir.
void emit_results(const ScenarioRun& run, const ScenarioConfig& cfg,
                  const std::filesystem::path& out_dir, double wall_seconds,
                  int workers);

const char* engine_version();

}  // namespace spinbatt
