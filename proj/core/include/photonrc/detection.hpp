#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "photonrc/fock_space.hpp"
#include "photonrc/propagation.hpp"

namespace photonrc {

struct DetectorModel {
  double eta = 1.0;           // quantum efficiency
  int max_photons = 4;        // post-selection threshold on the total count
  std::uint64_t n_samp = 100000;
  double dark_counts = 0.0;   // reserved; only 0 is simulated
};

void validate(const DetectorModel& detector);

/// Binomial thinning of every port count.
OutputDistribution apply_loss(const OutputDistribution& dist, double eta);

struct PostSelection {
  OutputDistribution kept;       // unnormalised, total <= max_photons
  double reject_probability = 0; // 1 - sum(kept), includes truncation mass
};

PostSelection postselect(const OutputDistribution& dist, int max_photons);

struct SampledFeatures {
  std::map<Occupation, double> frequencies;  // renormalised over kept draws
  double rejected_fraction = 0.0;
  std::uint64_t seed = 0;
  bool empty = false;                        // every draw hit the reject state
};

/// Multinomial counts of n_samp draws over the kept outcomes (map order) and the
/// reject state, drawn as sequential conditional binomials from mt19937_64(seed).
SampledFeatures sample(const PostSelection& selection, std::uint64_t n_samp, std::uint64_t seed);

/// Detection of an indistinguishable input: uniform loss commutes with the
/// network, so the binomial thinning is applied to the input state mode by
/// mode and only the branches with at most max_photons surviving photons are
/// propagated. Equal to postselect(apply_loss(trace_polarisation(propagate()))).
class LossyDetector {
 public:
  LossyDetector(const InputState& state, double eta, int max_photons);

  /// Kept distribution over ports for this unitary.
  PostSelection detect(const CMatrix& unitary) const;

  /// Kept probabilities in port_basis() order; the reject probability is
  /// one minus their sum.
  Eigen::VectorXd kept_probabilities(const CMatrix& unitary) const;

  /// enumerate_up_to(M, max_photons)
  const std::vector<Occupation>& port_basis() const { return port_basis_; }
  std::size_t branch_count() const { return branches_.size(); }

 private:
  struct Term {
    std::size_t input;  // index into inputs_
    Complex amplitude;
  };
  using Branch = std::vector<std::vector<Term>>;  // per sector

  std::size_t modes_;
  int max_photons_;
  std::vector<Occupation> inputs_;
  std::vector<std::vector<Occupation>> outputs_;  // per sector, 2M modes
  std::vector<std::vector<std::size_t>> port_index_;  // output -> port_basis_ index
  std::vector<Occupation> port_basis_;
  std::vector<Branch> branches_;
};

/// Which ports carry coherent light, and how many photons are added.
struct PortTemplate {
  int n = 0;
  bool coherent = false;
};

/// Post-selected mass of the loss-thinned input photon-number distribution
/// when every coherent port has amplitude `magnitude`.
double postselected_mass(std::span<const PortTemplate> ports, double magnitude,
                         const DetectorModel& detector);

/// Scans |alpha| over 0, 0.01, ..., 3 and returns per-port amplitudes (0 on
/// non-coherent ports) maximising postselected_mass. Empty when no port is coherent.
std::vector<double> optimise_alpha(std::span<const PortTemplate> ports,
                                   const DetectorModel& detector);

}  // namespace photonrc
