#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fbd/uniform_case.hpp"

namespace fbd {

/// Estimator identifiers as they appear in the CSV `estimator` column.
namespace estimator_id {
inline constexpr const char* kMle = "mle";
inline constexpr const char* kBayesParam = "bayes_param";
inline constexpr const char* kRestrictedFisher = "restricted_fisher";
inline constexpr const char* kRestrictedLebesgue = "restricted_lebesgue";
inline constexpr const char* kUnrestricted = "unrestricted";
}  // namespace estimator_id

struct SimConfig {
  int runs = 1000;
  std::vector<int> n_values{1, 2, 3, 5, 7, 10, 15, 22, 33, 47, 68, 100};
  double theta_true = 1.0;
  std::uint64_t seed = 20080101;
  std::vector<std::string> estimators{estimator_id::kMle, estimator_id::kBayesParam, estimator_id::kRestrictedFisher,
                                      estimator_id::kRestrictedLebesgue, estimator_id::kUnrestricted};
  std::vector<GammaPrior> prior_grid{{1.0, 1.0}, {1.0, 3.0}, {1.0, 100.0}};

  /// Throws InvalidArgument on an inconsistent configuration.
  void validate() const;
};

struct SimRecord {
  int n = 0;
  std::string estimator;
  double mean_sq_error = 0.0;
  int runs = 0;    // runs that produced an estimate
  int failed = 0;  // runs excluded because the estimator threw
};

/// Label for one prior of the Gamma grid, e.g. "bayes_param[1:3]".
std::string prior_label(const GammaPrior& prior);

/// Monte Carlo comparison of the estimators against U[0, θ].
///
/// Draws for (n, run) come from a counter-based stream keyed by
/// (seed, n, run), so every cell is reproducible on its own. Errors are
/// accumulated in run order. For `bayes_param` one row per prior is emitted
/// plus a `bayes_param` row holding the smallest of the per-prior averages.
/// Records come back sorted by (n, estimator).
std::vector<SimRecord> run_simulation(const SimConfig& cfg);

/// Draws `n` uniforms on (0, θ) for one run of the harness.
std::vector<double> draw_sample(std::uint64_t seed, int n, int run, double theta);

/// Header `n,estimator,mean_sq_error,runs`, one row per record sorted by
/// (n, estimator), floats with 17 significant digits.
void write_csv(const std::vector<SimRecord>& records, const std::filesystem::path& path);
std::string format_csv(const std::vector<SimRecord>& records);
std::vector<SimRecord> read_csv(const std::filesystem::path& path);

/// Flat `key=value` text with `#` comments. Keys: runs, n_values, theta,
/// seed, estimators, priors (as t1:t2 pairs, comma-separated).
SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::filesystem::path& path);

}  // namespace fbd
