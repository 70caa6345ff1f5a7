#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "photonrc/detection.hpp"
#include "photonrc/harness/config.hpp"
#include "photonrc/learning.hpp"
#include "photonrc/network.hpp"

namespace photonrc::harness {

/// Input state plus detection scheme. Maps a total unitary to a feature vector:
/// post-selected outcome frequencies over the port basis for photon-resolving
/// states, per-port intensities for coherent-intensity.
class ReservoirPipeline {
 public:
  ReservoirPipeline(const StateCase& state, const DetectorModel& detector,
                    const Truncation& truncation);

  std::size_t feature_count() const { return labels_.size(); }
  const std::vector<std::string>& feature_labels() const { return labels_; }
  const StateCase& state() const { return state_; }

  /// Kept probabilities (unnormalised) and the reject probability.
  PostSelection detect(const CMatrix& unitary) const;

  /// Exact features: kept probabilities renormalised over the kept events.
  FeatureColumn exact(const CMatrix& unitary) const;

  /// n_samp draws including the reject state; frequencies over kept draws.
  /// Intensity features are returned noise free.
  FeatureColumn sampled(const CMatrix& unitary, std::uint64_t n_samp, std::uint64_t seed) const;

  FeatureColumn evaluate(const CMatrix& unitary, bool exact_mode, std::uint64_t seed) const;

 private:
  Eigen::VectorXd kept_vector(const CMatrix& unitary) const;

  StateCase state_;
  DetectorModel detector_;
  std::vector<Occupation> basis_;
  std::vector<std::string> labels_;
  std::unique_ptr<LossyDetector> lossy_;  // indistinguishable photon-resolving states
  Occupation photons_;                    // distinguishable states, 2M modes
};

/// Lambda * E(x) for task coordinates x in [0, 1].
std::vector<CMatrix> encoded_unitaries(const PolarisingNetwork& network,
                                       const EncodingScheme& scheme, std::span<const double> xs);

EncodingScheme make_scheme(const EncodingCase& encoding, std::size_t ports, std::uint64_t seed);

/// Uniform grid j / points, j < points, on [0, 1).
std::vector<double> unit_grid(std::size_t points);

}  // namespace photonrc::harness
