#pragma once

#include <stdexcept>
#include <string>

namespace spinbatt {

/// Invalid run configuration. Carries the offending field name.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("config error [" + field + "]: " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Requested Hilbert-space dimension exceeds the configured cap.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(int two_j, int n_sites, std::size_t dim, std::size_t cap)
      : std::runtime_error("dimension cap exceeded: (2j+1)^N >= " +
                           std::to_string(dim) + " > " + std::to_string(cap) +
                           " for two_j=" + std::to_string(two_j) +
                           ", N=" + std::to_string(n_sites)),
        two_j_(two_j),
        n_sites_(n_sites) {}

  int two_j() const noexcept { return two_j_; }
  int n_sites() const noexcept { return n_sites_; }

 private:
  int two_j_;
  int n_sites_;
};

/// Spectrum normalization is undefined for operators proportional to the
/// identity (e_max == e_min).
class DegenerateSpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinbatt
