#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "photonrc/harness/config.hpp"
#include "photonrc/harness/dataset.hpp"
#include "photonrc/harness/targets.hpp"
#include "photonrc/learning.hpp"

namespace photonrc::harness {

/// Serialised results: results.json plus named CSV files.
struct RunOutput {
  nlohmann::json results;
  std::map<std::string, std::string> files;
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded shuffle; round(ratio * n) training indices, both halves sorted.
Split random_split(std::size_t n, double ratio, std::uint64_t seed);

struct FitResult {
  double train_mse = 0.0;
  double test_mse = 0.0;
  Eigen::Index rank = 0;
  std::vector<double> predictions;  // over every design column
};

/// Fits the readout on the training columns. Exact mode thresholds singular
/// values at rcond; sampled mode keeps the conditioned-rank directions of the
/// training features plus the bias.
FitResult fit_readout(const DesignMatrix& design, std::span<const double> values, const Split& split,
                      const ExperimentConfig& config);

std::vector<std::uint64_t> reservoir_seeds(const ExperimentConfig& config);

RunOutput run_interpolation(const ExperimentConfig& config);

RunOutput run_diagnostics(const ExperimentConfig& config);

/// Loads the configured dataset.
RunOutput run_classification(const ExperimentConfig& config);
RunOutput run_classification(const ExperimentConfig& config, const ImageDataset& data);

/// Network description of every configured reservoir.
RunOutput show_networks(const ExperimentConfig& config);

}  // namespace photonrc::harness
