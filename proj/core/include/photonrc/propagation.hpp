#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "photonrc/encoding.hpp"
#include "photonrc/fock_space.hpp"
#include "photonrc/types.hpp"

namespace photonrc {

/// Per-port input: n added photons on top of a coherent amplitude alpha.
/// alpha == 0 gives a Fock state, n == 0 a coherent state.
struct PortStateSpec {
  int n = 0;
  Complex alpha{0.0, 0.0};
  std::optional<PolarisationState> polarisation;  // horizontal when empty
  bool distinguishable = false;
};

/// Where the displacement power series is cut.
struct Truncation {
  enum class Mode { Relative, FixedOrder };
  Mode mode = Mode::Relative;
  double relative_cutoff = 0.01;  // drop terms whose |alpha^k / k!| < cutoff * peak
  int order = 6;                  // keep k <= order
};

struct StateComponent {
  Complex amplitude;
  Occupation occupation;
};

/// Superposition over 2M-mode occupations. Components share a photon sector
/// only when they interfere; the network never couples sectors.
class InputState {
 public:
  InputState(std::size_t modes, std::vector<StateComponent> components, bool distinguishable);

  std::size_t mode_count() const { return modes_; }
  bool distinguishable() const { return distinguishable_; }
  const std::vector<StateComponent>& components() const { return components_; }

  double norm_squared() const;
  /// 1 - norm_squared(): probability lost to the series truncation.
  double truncation_mass() const { return 1.0 - norm_squared(); }
  int max_photons() const;

 private:
  std::size_t modes_;
  std::vector<StateComponent> components_;
  bool distinguishable_;
};

/// Laguerre polynomial L_n(x) by the three-term recurrence.
double laguerre(int n, double x);

/// Builds |psi_{alpha,n}> per port, applies the polarisation replacement rule
/// and takes the tensor product over ports. Throws std::invalid_argument for
/// distinguishable ports with non-zero alpha, or a mix of distinguishable and
/// indistinguishable ports.
InputState build_input_state(std::span<const PortStateSpec> specs,
                             const Truncation& truncation = {});

/// Fock amplitudes of (a^dag)^n D(alpha)|0> / sqrt(L_n(-|alpha|^2) n!) after
/// truncating the displacement series; index j is the photon number.
std::vector<Complex> port_amplitudes(int added, Complex alpha, const Truncation& truncation);

/// <out| U |in> = perm(U[out, in]) / sqrt(prod in! prod out!)
Complex fock_amplitude(const CMatrix& unitary, const Occupation& input, const Occupation& output);

/// <out|U|in> for every out in `outputs` (all must share the photon number of `input`).
CVector transition_amplitudes(const CMatrix& unitary, const Occupation& input,
                              std::span<const Occupation> outputs);

/// Probabilities over occupations. std::map keeps iteration deterministic.
class OutputDistribution {
 public:
  OutputDistribution() = default;
  explicit OutputDistribution(std::size_t modes) : modes_(modes) {}

  std::size_t mode_count() const { return modes_; }
  const std::map<Occupation, double>& probabilities() const { return probs_; }

  void add(const Occupation& occ, double p);
  double probability(const Occupation& occ) const;
  double total() const;
  std::map<int, double> sector_totals() const;
  bool empty() const { return probs_.empty(); }

 private:
  std::size_t modes_ = 0;
  std::map<Occupation, double> probs_;
};

/// Exact output distribution: sectors are propagated independently, amplitudes
/// summed coherently within a sector.
OutputDistribution propagate(const InputState& state, const CMatrix& unitary);

/// Photons scatter independently with single-photon law |U_{j,src}|^2.
OutputDistribution propagate_distinguishable(const Occupation& photons, const CMatrix& unitary);

/// Sums probabilities over polarisation; 2M modes -> M ports.
OutputDistribution trace_polarisation(const OutputDistribution& dist);

/// Classical fields: alpha_out = U alpha_in; returns per-port |a_H|^2 + |a_V|^2.
/// All specs must have n == 0.
std::vector<double> intensity_expectation(std::span<const PortStateSpec> specs,
                                          const CMatrix& unitary);

}  // namespace photonrc
