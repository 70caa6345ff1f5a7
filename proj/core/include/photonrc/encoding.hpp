#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "photonrc/network.hpp"
#include "photonrc/types.hpp"

namespace photonrc {

/// Spiral trajectory parameters of one input port.
struct PortEncodingParams {
  int xi = 0;       // leaves the equator when 1
  int gamma = 0;    // reverses at the poles (interleaved spiral) when 1
  double nu = 1.0;  // azimuthal orbits per period
  double rho = 0.0; // phase offset in [0, 2]
};

enum class EncodingPreset { UniformLinear, MultiLinear, Spiral, Custom };

std::string_view to_string(EncodingPreset preset);
EncodingPreset parse_preset(std::string_view name);

struct EncodingScheme {
  EncodingPreset preset = EncodingPreset::Custom;
  std::vector<PortEncodingParams> ports;

  std::size_t port_count() const { return ports.size(); }
};

/// Poincare sphere coordinates of a pure polarisation.
struct PolarisationState {
  double theta = 0.0;
  double phi = 0.0;

  Complex h() const;
  Complex v() const;
};

struct WaveplateAngles {
  double quarter = 0.0;
  double half = 0.0;
};

/// Wraps x + rho into [-1, 1) and evaluates the spiral parametrisation.
/// The step function is 0 at 0.
WaveplateAngles waveplate_angles(double x, const PortEncodingParams& params);

/// Task inputs live on [0, 1]; the encoding coordinate is 2x - 1.
constexpr double encoding_coordinate(double task_x) { return 2.0 * task_x - 1.0; }

Eigen::Matrix2cd quarter_wave_plate(double angle);
Eigen::Matrix2cd half_wave_plate(double angle);

/// HWP(half) * QWP(quarter); the quarter-wave plate is traversed first.
Eigen::Matrix2cd jones_rotation(double quarter, double half);

/// Block-diagonal E(x) in the encoding coordinate.
CMatrix encoding_layer(double x, const EncodingScheme& scheme);

/// Polarisation reached from |H> at each x (encoding coordinate).
std::vector<PolarisationState> trajectory(const EncodingScheme& scheme, std::size_t port,
                                          std::span<const double> xs);

/// uniform-linear: nu_m = slope; multi-linear: nu_m = m; spiral: xi = 1, nu_m = 4m
/// (m is 1-based). Offsets start at zero.
EncodingScheme make_preset(std::string_view name, std::size_t ports, double slope = 1.0);

enum class OffsetPolicy { None, Staggered, Random };

OffsetPolicy parse_offset_policy(std::string_view name);
std::string_view to_string(OffsetPolicy policy);

/// Staggered: rho_m = 2m / M (0-based m). Random: uniform on [0, 2] from `seed`.
void apply_offsets(EncodingScheme& scheme, OffsetPolicy policy, std::uint64_t seed = 0);

/// Maps a feature normalised to [0, 1] onto a reflectance in [pi/4, 3pi/4].
/// Values outside [0, 1] are clamped.
double feature_reflectance(double normalised);

/// R2 * E(features) * R1, where E is `mesh` with its IPBS reflectances set from
/// the features: crossing k takes alpha_h from feature 2k and alpha_v from
/// feature 2k + 1. Requires exactly 2 Z features (20 at M = 5).
CMatrix feature_encoded_network(std::span<const double> features,
                                const PolarisingNetwork& first, const PolarisingNetwork& mesh,
                                const PolarisingNetwork& second);

}  // namespace photonrc
