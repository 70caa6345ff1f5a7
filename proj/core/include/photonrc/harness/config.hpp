#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "photonrc/detection.hpp"
#include "photonrc/encoding.hpp"
#include "photonrc/propagation.hpp"

namespace photonrc::harness {

inline constexpr int kSchemaVersion = 1;

enum class StateKind { Fock, Distinguishable, Hybrid, CoherentPnr, CoherentIntensity };

std::string_view to_string(StateKind kind);
StateKind parse_state_kind(std::string_view name);

struct StateCase {
  std::string name;
  StateKind kind = StateKind::Fock;
  std::vector<PortStateSpec> ports;

  /// Everything except coherent-intensity.
  bool photon_resolving() const { return kind != StateKind::CoherentIntensity; }
};

struct EncodingCase {
  std::string name;
  EncodingPreset preset = EncodingPreset::Spiral;
  double slope = 1.0;
  OffsetPolicy offsets = OffsetPolicy::None;
};

struct NetworkConfig {
  std::size_t ports = 5;
  std::vector<std::uint64_t> seeds;  // one per reservoir
};

struct ReadoutConfig {
  double rcond = 1e-10;
  double k = 3.0;
};

struct InterpolationConfig {
  std::size_t targets = 35;
  double bandwidth = 16.0;
  std::size_t terms = 5;
  std::size_t grid = 512;
};

struct DiagnosticsConfig {
  std::size_t grid = 256;
  std::size_t functions = 10;  // most probable output functions exported
};

struct ClassificationConfig {
  std::filesystem::path images;
  std::filesystem::path labels;
  std::size_t components = 20;
  std::size_t max_images = 0;        // 0 keeps every record
  std::vector<std::string> states;   // empty: all configured states
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  NetworkConfig network;
  std::vector<StateCase> states;
  std::vector<EncodingCase> encodings;
  DetectorModel detector{0.9, 4, 100000, 0.0};
  Truncation truncation;
  ReadoutConfig readout;
  InterpolationConfig interpolation;
  DiagnosticsConfig diagnostics;
  std::optional<ClassificationConfig> classification;
  double split = 0.5;
  bool exact = false;
  std::size_t threads = 0;  // 0: hardware concurrency
  std::filesystem::path output = "results";
  std::string hash;         // FNV-1a of the canonical document without "output"
  nlohmann::json document;  // the effective document

  std::size_t worker_count() const;
};

/// Collected validation failures, each prefixed with its JSON path.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Relative dataset paths are resolved against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& doc,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// The five reference states at M = 5 and the three encoding presets.
nlohmann::json default_config();

std::string fnv1a_hex(std::string_view bytes);

}  // namespace photonrc::harness
