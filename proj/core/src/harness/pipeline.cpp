#include "photonrc/harness/pipeline.hpp"

#include <stdexcept>

namespace photonrc::harness {

ReservoirPipeline::ReservoirPipeline(const StateCase& state, const DetectorModel& detector,
                                     const Truncation& truncation)
    : state_(state), detector_(detector) {
  validate(detector_);
  const std::size_t ports = state.ports.size();
  if (!state.photon_resolving()) {
    for (std::size_t m = 0; m < ports; ++m) labels_.push_back("I" + std::to_string(m));
    return;
  }
  basis_ = enumerate_up_to(ports, static_cast<std::size_t>(detector.max_photons));
  for (const auto& occ : basis_) labels_.push_back(occ.label());
  if (state.kind == StateKind::Distinguishable) {
    std::vector<int> counts(2 * ports, 0);
    for (std::size_t m = 0; m < ports; ++m) counts[h_mode(m)] = state.ports[m].n;
    photons_ = Occupation(std::move(counts));
    return;
  }
  const InputState input = build_input_state(state.ports, truncation);
  lossy_ = std::make_unique<LossyDetector>(input, detector.eta, detector.max_photons);
}

Eigen::VectorXd ReservoirPipeline::kept_vector(const CMatrix& unitary) const {
  if (lossy_) return lossy_->kept_probabilities(unitary);
  const PostSelection sel = postselect(
      apply_loss(trace_polarisation(propagate_distinguishable(photons_, unitary)), detector_.eta),
      detector_.max_photons);
  Eigen::VectorXd kept(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    kept(static_cast<Eigen::Index>(i)) = sel.kept.probability(basis_[i]);
  }
  return kept;
}

PostSelection ReservoirPipeline::detect(const CMatrix& unitary) const {
  if (!state_.photon_resolving()) {
    throw std::logic_error("ReservoirPipeline::detect: intensity detection has no outcomes");
  }
  const Eigen::VectorXd kept = kept_vector(unitary);
  PostSelection sel{OutputDistribution(state_.ports.size()), 0.0};
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const double p = kept(static_cast<Eigen::Index>(i));
    if (p > 0.0) sel.kept.add(basis_[i], p);
  }
  sel.reject_probability = std::max(0.0, 1.0 - kept.sum());
  return sel;
}

FeatureColumn ReservoirPipeline::exact(const CMatrix& unitary) const {
  if (!state_.photon_resolving()) {
    const auto intensities = intensity_expectation(state_.ports, unitary);
    return {Eigen::Map<const Eigen::VectorXd>(intensities.data(), static_cast<Eigen::Index>(intensities.size())), false};
  }
  Eigen::VectorXd kept = kept_vector(unitary);
  const double total = kept.sum();
  if (!(total > 0.0)) return {Eigen::VectorXd::Zero(kept.size()), true};
  return {kept / total, false};
}

FeatureColumn ReservoirPipeline::sampled(const CMatrix& unitary, std::uint64_t n_samp,
                                         std::uint64_t seed) const {
  if (!state_.photon_resolving()) return exact(unitary);
  const SampledFeatures draws = sample(detect(unitary), n_samp, seed);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto it = draws.frequencies.find(basis_[i]);
    if (it != draws.frequencies.end()) values(static_cast<Eigen::Index>(i)) = it->second;
  }
  return {values, draws.empty};
}

FeatureColumn ReservoirPipeline::evaluate(const CMatrix& unitary, bool exact_mode,
                                          std::uint64_t seed) const {
  return exact_mode ? exact(unitary) : sampled(unitary, detector_.n_samp, seed);
}

std::vector<CMatrix> encoded_unitaries(const PolarisingNetwork& network,
                                       const EncodingScheme& scheme, std::span<const double> xs) {
  if (scheme.port_count() != network.port_count()) {
    throw std::invalid_argument("encoded_unitaries: encoding and network port counts differ");
  }
  std::vector<CMatrix> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(network.unitary() * encoding_layer(encoding_coordinate(x), scheme));
  return out;
}

EncodingScheme make_scheme(const EncodingCase& encoding, std::size_t ports, std::uint64_t seed) {
  EncodingScheme scheme = make_preset(to_string(encoding.preset), ports, encoding.slope);
  apply_offsets(scheme, encoding.offsets, seed);
  return scheme;
}

std::vector<double> unit_grid(std::size_t points) {
  std::vector<double> xs(points);
  for (std::size_t j = 0; j < points; ++j) xs[j] = static_cast<double>(j) / static_cast<double>(points);
  return xs;
}

}  // namespace photonrc::harness
