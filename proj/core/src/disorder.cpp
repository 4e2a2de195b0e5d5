#include "spinbatt/disorder.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "spinbatt/parallel.hpp"

namespace spinbatt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1], pure function of (seed, realization, counter).
double keyed_uniform(std::uint64_t seed, std::uint64_t realization,
                     std::uint64_t counter) {
  const std::uint64_t z =
      splitmix64(splitmix64(splitmix64(seed) + realization) + counter);
  return (static_cast<double>(z >> 11) + 1.0) * 0x1.0p-53;
}

// Box-Muller on two keyed uniforms.
double keyed_normal(std::uint64_t seed, std::uint64_t realization,
                    std::uint64_t index) {
  const double u1 = keyed_uniform(seed, realization, 2 * index);
  const double u2 = keyed_uniform(seed, realization, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

struct MeanStdErr {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanStdErr mean_and_std_error(const std::vector<double>& values) {
  MeanStdErr out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  out.mean = pairwise_sum(values.data(), n) / static_cast<double>(n);
  if (n < 2) return out;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - out.mean;
    sq[i] = d * d;
  }
  const double var =
      pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
  out.std_error = std::sqrt(var / static_cast<double>(n));
  return out;
}

}  // namespace

std::vector<double> sample_couplings(const DisorderSpec& spec, int n_bonds,
                                     std::uint64_t realization_index) {
  if (n_bonds < 1) throw std::invalid_argument("n_bonds must be >= 1");
  if (!(spec.sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  std::vector<double> couplings(static_cast<std::size_t>(n_bonds));
  for (int b = 0; b < n_bonds; ++b) {
    couplings[static_cast<std::size_t>(b)] =
        spec.mean + spec.sigma * keyed_normal(spec.seed, realization_index,
                                              static_cast<std::uint64_t>(b));
  }
  return couplings;
}

QuenchedResult quenched_average_pmax(const ModelConfig& model,
                                     const DisorderSpec& spec,
                                     const PowerSearchSettings& power,
                                     int workers) {
  if (spec.realizations < 1) {
    throw std::invalid_argument("realizations must be >= 1");
  }
  const int n_bonds = model.n_sites - 1;
  const auto n = static_cast<std::size_t>(spec.realizations);

  std::vector<std::optional<double>> pmax(n);
  std::vector<std::string> failure(n);
  parallel_for(n, workers, [&](std::size_t i) {
    try {
      const auto couplings =
          sample_couplings(spec, n_bonds, static_cast<std::uint64_t>(i));
      pmax[i] = compute_pmax(model, couplings, power).p_max;
    } catch (const std::exception& e) {
      failure[i] = e.what();
    }
  });

  std::size_t failed = 0;
  std::size_t first_failed = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!pmax[i]) {
      ++failed;
      if (first_failed == n) first_failed = i;
    }
  }
  if (static_cast<double>(failed) > 0.01 * static_cast<double>(n)) {
    throw std::runtime_error(
        "quenched average aborted: " + std::to_string(failed) + "/" +
        std::to_string(n) + " realizations failed; first failure at index " +
        std::to_string(first_failed) + ": " + failure[first_failed]);
  }

  QuenchedResult result;
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (pmax[i]) values.push_back(*pmax[i]);
    if ((i + 1) % static_cast<std::size_t>(result.checkpoint_interval) == 0) {
      const MeanStdErr ms = mean_and_std_error(values);
      result.running_means.push_back(ms.mean);
      result.running_std_errors.push_back(ms.std_error);
    }
  }
  const MeanStdErr ms = mean_and_std_error(values);
  result.mean_pmax = ms.mean;
  result.std_error = ms.std_error;
  result.realizations_used = static_cast<int>(values.size());
  const std::size_t n_checkpoints = result.running_means.size();
  result.converged =
      n_checkpoints >= 2 &&
      std::abs(result.running_means[n_checkpoints - 1] -
               result.running_means[n_checkpoints - 2]) < 0.01;
  return result;
}

}  // namespace spinbatt
