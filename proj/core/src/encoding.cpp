#include "photonrc/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "photonrc/rng.hpp"

namespace photonrc {

std::string_view to_string(EncodingPreset preset) {
  switch (preset) {
    case EncodingPreset::UniformLinear: return "uniform-linear";
    case EncodingPreset::MultiLinear: return "multi-linear";
    case EncodingPreset::Spiral: return "spiral";
    case EncodingPreset::Custom: return "custom";
  }
  return "custom";
}

EncodingPreset parse_preset(std::string_view name) {
  if (name == "uniform-linear") return EncodingPreset::UniformLinear;
  if (name == "multi-linear") return EncodingPreset::MultiLinear;
  if (name == "spiral") return EncodingPreset::Spiral;
  if (name == "custom") return EncodingPreset::Custom;
  throw std::invalid_argument("unknown encoding preset '" + std::string(name) + "'");
}

Complex PolarisationState::h() const { return {std::cos(theta), 0.0}; }
Complex PolarisationState::v() const { return std::sin(theta) * std::polar(1.0, phi); }

namespace {

double wrap_periodic(double x) {
  // Into [-1, 1), period 2.
  return x - 2.0 * std::floor((x + 1.0) / 2.0);
}

double step(double x) { return x > 0.0 ? 1.0 : 0.0; }

Eigen::Matrix2cd rotated(double angle, Complex slow) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2cd m;
  m << c * c + slow * s * s, c * s * (1.0 - slow),
      c * s * (1.0 - slow), s * s + slow * c * c;
  return m;
}

}  // namespace

WaveplateAngles waveplate_angles(double x, const PortEncodingParams& params) {
  const double xp = wrap_periodic(x + params.rho);
  const double h = step(xp);
  const double xi = params.xi;
  const double gamma = params.gamma;
  const double nu = params.nu;
  WaveplateAngles angles;
  angles.quarter = xi * (1.0 + 2.0 * xp - 4.0 * xp * gamma * h) * kPi / 4.0;
  angles.half = (nu * xp + xi * gamma * h + 2.0 * nu * xp * gamma * h - 2.0 * nu * xp) * kPi / 4.0;
  return angles;
}

Eigen::Matrix2cd quarter_wave_plate(double angle) { return rotated(angle, {0.0, 1.0}); }

Eigen::Matrix2cd half_wave_plate(double angle) { return rotated(angle, {-1.0, 0.0}); }

Eigen::Matrix2cd jones_rotation(double quarter, double half) {
  return half_wave_plate(half) * quarter_wave_plate(quarter);
}

CMatrix encoding_layer(double x, const EncodingScheme& scheme) {
  const auto modes = static_cast<Eigen::Index>(2 * scheme.port_count());
  CMatrix e = CMatrix::Zero(modes, modes);
  for (std::size_t m = 0; m < scheme.port_count(); ++m) {
    const WaveplateAngles a = waveplate_angles(x, scheme.ports[m]);
    e.block<2, 2>(static_cast<Eigen::Index>(h_mode(m)), static_cast<Eigen::Index>(h_mode(m))) =
        jones_rotation(a.quarter, a.half);
  }
  return e;
}

std::vector<PolarisationState> trajectory(const EncodingScheme& scheme, std::size_t port,
                                          std::span<const double> xs) {
  if (port >= scheme.port_count()) throw std::out_of_range("trajectory: port out of range");
  std::vector<PolarisationState> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const WaveplateAngles a = waveplate_angles(x, scheme.ports[port]);
    const Eigen::Vector2cd c = jones_rotation(a.quarter, a.half).col(0);
    PolarisationState s;
    s.theta = std::atan2(std::abs(c(1)), std::abs(c(0)));
    double phi = std::arg(c(1)) - std::arg(c(0));
    if (phi <= -kPi) phi += 2.0 * kPi;
    if (phi > kPi) phi -= 2.0 * kPi;
    s.phi = phi;
    out.push_back(s);
  }
  return out;
}

EncodingScheme make_preset(std::string_view name, std::size_t ports, double slope) {
  EncodingScheme scheme;
  scheme.preset = parse_preset(name);
  scheme.ports.resize(ports);
  for (std::size_t m = 0; m < ports; ++m) {
    PortEncodingParams& p = scheme.ports[m];
    const double index = static_cast<double>(m + 1);
    switch (scheme.preset) {
      case EncodingPreset::UniformLinear: p.nu = slope; break;
      case EncodingPreset::MultiLinear: p.nu = index; break;
      case EncodingPreset::Spiral:
        p.xi = 1;
        p.nu = 4.0 * index;
        break;
      case EncodingPreset::Custom:
        throw std::invalid_argument("make_preset: 'custom' has no preset parameters");
    }
  }
  return scheme;
}

OffsetPolicy parse_offset_policy(std::string_view name) {
  if (name == "none") return OffsetPolicy::None;
  if (name == "staggered") return OffsetPolicy::Staggered;
  if (name == "random") return OffsetPolicy::Random;
  throw std::invalid_argument("unknown offset policy '" + std::string(name) + "'");
}

std::string_view to_string(OffsetPolicy policy) {
  switch (policy) {
    case OffsetPolicy::None: return "none";
    case OffsetPolicy::Staggered: return "staggered";
    case OffsetPolicy::Random: return "random";
  }
  return "none";
}

void apply_offsets(EncodingScheme& scheme, OffsetPolicy policy, std::uint64_t seed) {
  const double ports = static_cast<double>(scheme.port_count());
  Rng rng(seed);
  for (std::size_t m = 0; m < scheme.port_count(); ++m) {
    double& rho = scheme.ports[m].rho;
    switch (policy) {
      case OffsetPolicy::None: rho = 0.0; break;
      case OffsetPolicy::Staggered: rho = 2.0 * static_cast<double>(m) / ports; break;
      case OffsetPolicy::Random: rho = rng.uniform(0.0, 2.0); break;
    }
  }
}

double feature_reflectance(double normalised) {
  return kPi / 4.0 + std::clamp(normalised, 0.0, 1.0) * kPi / 2.0;
}

CMatrix feature_encoded_network(std::span<const double> features,
                                const PolarisingNetwork& first, const PolarisingNetwork& mesh,
                                const PolarisingNetwork& second) {
  const std::size_t crossings = mesh.crossings().size();
  if (features.size() != 2 * crossings) {
    throw std::invalid_argument("feature_encoded_network: expected " +
                                std::to_string(2 * crossings) + " features, got " +
                                std::to_string(features.size()));
  }
  if (first.port_count() != mesh.port_count() || second.port_count() != mesh.port_count()) {
    throw std::invalid_argument("feature_encoded_network: port counts differ");
  }
  std::vector<double> alpha_h(crossings), alpha_v(crossings);
  for (std::size_t k = 0; k < crossings; ++k) {
    alpha_h[k] = feature_reflectance(features[2 * k]);
    alpha_v[k] = feature_reflectance(features[2 * k + 1]);
  }
  const PolarisingNetwork encoded = mesh.with_reflectances(alpha_h, alpha_v);
  return second.unitary() * encoded.unitary() * first.unitary();
}

}  // namespace photonrc
