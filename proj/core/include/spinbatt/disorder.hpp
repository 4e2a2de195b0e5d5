#pragma once

#include <cstdint>
#include <vector>

#include "spinbatt/model.hpp"

namespace spinbatt {

/// Gaussian bond-coupling disorder: lambda_k ~ Normal(mean, sigma^2),
/// untruncated.
struct DisorderSpec {
  double mean = 0.0;
  double sigma = 0.0;
  int realizations = 2000;
  std::uint64_t seed = 0;
};

/// i.i.d. Normal(mean, sigma^2) draws from a counter-based generator keyed
/// by (seed, realization_index): the same key always yields the same
/// couplings, independent of call order or thread schedule.
std::vector<double> sample_couplings(const DisorderSpec& spec, int n_bonds,
                                     std::uint64_t realization_index);

struct QuenchedResult {
  double mean_pmax = 0.0;
  double std_error = 0.0;                    // sample std / sqrt(n)
  std::vector<double> running_means;         // one per checkpoint
  std::vector<double> running_std_errors;
  int checkpoint_interval = 100;
  int realizations_used = 0;
  bool converged = false;  // last two checkpoints agree to 0.01
};

/// Runs the full pipeline per realization (build, normalize, prepare,
/// re-optimize the power window) and averages P_max over realizations.
/// Aggregation is deterministic regardless of the worker schedule. Aborts
/// when more than 1% of realizations fail, naming the first failure.
QuenchedResult quenched_average_pmax(const ModelConfig& model,
                                     const DisorderSpec& spec,
                                     const PowerSearchSettings& power = {},
                                     int workers = 0);

}  // namespace spinbatt
