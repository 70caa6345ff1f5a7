#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "photonrc/types.hpp"

namespace photonrc {

/// Variable beamsplitter followed by a phase shifter; cos(alpha) = t, sin(alpha) = r.
struct BeamsplitterPhase {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Elliptical retarder: linear retardance eta, circularity phi, fast-axis angle theta.
struct RetarderPlate {
  double eta = 0.0;
  double phi = 0.0;
  double theta = 0.0;
};

/// The two birefringent plates placed on the outputs (m, p) of a crossing.
struct RetarderPair {
  RetarderPlate first;
  RetarderPlate second;
};

/// One Reck crossing between ports m < p (0-based): an imperfect polarising
/// beamsplitter, a retarder on each output and a phase shifter on port m.
struct Crossing {
  std::size_t port_m = 0;
  std::size_t port_p = 1;
  double alpha_h = 0.0;
  double alpha_v = 0.0;
  RetarderPair retarders;
  double phase = 0.0;
};

/// [[cos a e^{ib}, sin a], [-sin a e^{ib}, cos a]]
Eigen::Matrix2cd beamsplitter_phase_matrix(double alpha, double beta);
inline Eigen::Matrix2cd beamsplitter_phase_matrix(const BeamsplitterPhase& bs) {
  return beamsplitter_phase_matrix(bs.alpha, bs.beta);
}

/// Writes a k x k block into a dim x dim identity; block row/column r lands on
/// mode_indices[r]. Indices must be distinct and < dim.
CMatrix givens_embed(const CMatrix& block, std::span<const std::size_t> mode_indices,
                     std::size_t dim);

// 4x4 crossing primitives use the local mode order (m_H, p_H, m_V, p_V).

Eigen::Matrix4cd ipbs_matrix(double alpha_h, double alpha_v);

/// Single-plate Jones retarder acting on (H, V).
Eigen::Matrix2cd retarder_matrix(const RetarderPlate& plate);

Eigen::Matrix4cd retarder_pair_matrix(const RetarderPair& pair);

/// diag(e^{i phase}) on both polarisation modes of port m, identity on port p.
Eigen::Matrix4cd crossing_phase_matrix(double phase);

/// phase * retarders * ipbs, local order.
Eigen::Matrix4cd crossing_matrix(const Crossing& crossing);

/// Global indices of the local (m_H, p_H, m_V, p_V) order.
std::array<std::size_t, 4> crossing_modes(std::size_t port_m, std::size_t port_p);

/// 2M x 2M diagonal with e^{i psi_m} on both polarisation modes of port m.
CMatrix output_phase_matrix(std::span<const double> psis);

/// Port pairs in the order the Reck product is written:
/// (M-1,M), (M-2,M-1), (M-2,M), ..., (1,2), ..., (1,M), converted to 0-based.
/// The last entry acts first on the input.
std::vector<std::pair<std::size_t, std::size_t>> reck_port_pairs(std::size_t ports);

/// A polarising Reck mesh with its cached 2M x 2M scattering matrix.
/// Immutable after construction.
class PolarisingNetwork {
 public:
  static constexpr std::string_view kOrderingTag = "reck-written-order/interleaved-hv/v1";

  PolarisingNetwork(std::size_t ports, std::vector<Crossing> crossings,
                    std::vector<double> output_phases,
                    std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t port_count() const { return ports_; }
  std::size_t mode_count() const { return 2 * ports_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<double>& output_phases() const { return output_phases_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  /// Lambda = Psi * lambda_0 * lambda_1 * ... * lambda_{Z-1}
  const CMatrix& unitary() const { return unitary_; }

  /// Copy with the IPBS reflectances replaced; used by the beamsplitter encoding.
  PolarisingNetwork with_reflectances(std::span<const double> alpha_h,
                                      std::span<const double> alpha_v) const;

 private:
  std::size_t ports_;
  std::vector<Crossing> crossings_;
  std::vector<double> output_phases_;
  std::optional<std::uint64_t> seed_;
  CMatrix unitary_;
};

CMatrix assemble(const PolarisingNetwork& network);

/// Random reservoir with non-polarising beamsplitters (alpha_h == alpha_v,
/// uniform on [0, pi/2]); retarder angles, crossing phases and output phases
/// uniform on [0, 2 pi). Draw order per crossing: alpha, first (eta, phi,
/// theta), second (eta, phi, theta), phase; then the M output phases.
PolarisingNetwork random_reservoir(std::size_t ports, std::uint64_t seed);

nlohmann::json to_json(const PolarisingNetwork& network);
PolarisingNetwork network_from_json(const nlohmann::json& doc);

}  // namespace photonrc
