#include "photonrc/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "photonrc/network.hpp"
#include "photonrc/rng.hpp"

namespace photonrc::harness {

std::string_view to_string(StateKind kind) {
  switch (kind) {
    case StateKind::Fock: return "fock";
    case StateKind::Distinguishable: return "distinguishable";
    case StateKind::Hybrid: return "hybrid";
    case StateKind::CoherentPnr: return "coherent-pnr";
    case StateKind::CoherentIntensity: return "coherent-intensity";
  }
  return "unknown";
}

StateKind parse_state_kind(std::string_view name) {
  for (auto kind : {StateKind::Fock, StateKind::Distinguishable, StateKind::Hybrid,
                    StateKind::CoherentPnr, StateKind::CoherentIntensity}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown state kind '" + std::string(name) + "'");
}

std::size_t ExperimentConfig::worker_count() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "invalid config:";
  for (const auto& i : issues) out += "\n  " + i;
  return out;
}

using json = nlohmann::json;

// Reads typed fields and records a path-qualified issue on every mismatch.
class Reader {
 public:
  std::vector<std::string> issues;

  void fail(const std::string& path, const std::string& message) {
    issues.push_back(path + ": " + message);
  }

  const json* child(const json& obj, const std::string& key) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  double number(const json& obj, const std::string& key, const std::string& path, double fallback) {
    const json* v = child(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) {
      fail(path + "." + key, "expected a number");
      return fallback;
    }
    return v->get<double>();
  }

  std::uint64_t unsigned_int(const json& obj, const std::string& key, const std::string& path,
                             std::uint64_t fallback) {
    const json* v = child(obj, key);
    if (!v) return fallback;
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
      fail(path + "." + key, "expected a non-negative integer");
      return fallback;
    }
    return v->get<std::uint64_t>();
  }

  bool boolean(const json& obj, const std::string& key, const std::string& path, bool fallback) {
    const json* v = child(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) {
      fail(path + "." + key, "expected true or false");
      return fallback;
    }
    return v->get<bool>();
  }

  std::string string(const json& obj, const std::string& key, const std::string& path,
                     const std::string& fallback) {
    const json* v = child(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) {
      fail(path + "." + key, "expected a string");
      return fallback;
    }
    return v->get<std::string>();
  }
};

Complex parse_complex(Reader& r, const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  r.fail(path, "expected a number or [re, im]");
  return {};
}

StateCase parse_state(Reader& r, const json& doc, const std::string& path, std::size_t ports) {
  StateCase state;
  if (!doc.is_object()) {
    r.fail(path, "expected an object");
    return state;
  }
  const std::string kind = r.string(doc, "kind", path, "");
  try {
    state.kind = parse_state_kind(kind);
  } catch (const std::invalid_argument&) {
    r.fail(path + ".kind", "expected one of fock, distinguishable, hybrid, coherent-pnr, coherent-intensity");
    return state;
  }
  state.name = r.string(doc, "name", path, kind);
  state.ports.assign(ports, PortStateSpec{});

  if (const json* n = r.child(doc, "n")) {
    if (!n->is_array() || n->size() != ports) {
      r.fail(path + ".n", "expected " + std::to_string(ports) + " photon numbers");
    } else {
      for (std::size_t m = 0; m < ports; ++m) {
        const json& v = (*n)[m];
        if (!v.is_number_integer() || v.get<int>() < 0) {
          r.fail(path + ".n[" + std::to_string(m) + "]", "expected a non-negative integer");
        } else {
          state.ports[m].n = v.get<int>();
        }
      }
    }
  }
  if (const json* a = r.child(doc, "alpha")) {
    if (!a->is_array() || a->size() != ports) {
      r.fail(path + ".alpha", "expected " + std::to_string(ports) + " amplitudes");
    } else {
      for (std::size_t m = 0; m < ports; ++m) {
        state.ports[m].alpha = parse_complex(r, (*a)[m], path + ".alpha[" + std::to_string(m) + "]");
      }
    }
  }
  if (const json* p = r.child(doc, "polarisation")) {
    if (!p->is_array() || p->size() != ports) {
      r.fail(path + ".polarisation", "expected " + std::to_string(ports) + " entries");
    } else {
      for (std::size_t m = 0; m < ports; ++m) {
        const json& v = (*p)[m];
        const std::string at = path + ".polarisation[" + std::to_string(m) + "]";
        if (v.is_null()) continue;
        if (!v.is_object()) {
          r.fail(at, "expected null or {theta, phi}");
          continue;
        }
        state.ports[m].polarisation = PolarisationState{r.number(v, "theta", at, 0.0), r.number(v, "phi", at, 0.0)};
      }
    }
  }

  bool any_n = false;
  bool any_alpha = false;
  for (auto& spec : state.ports) {
    any_n = any_n || spec.n > 0;
    any_alpha = any_alpha || spec.alpha != Complex{};
    spec.distinguishable = state.kind == StateKind::Distinguishable;
  }
  switch (state.kind) {
    case StateKind::Fock:
    case StateKind::Distinguishable:
      if (any_alpha) r.fail(path + ".alpha", "must be zero for " + kind + " states");
      if (!any_n) r.fail(path + ".n", "needs at least one photon");
      if (state.kind == StateKind::Distinguishable) {
        for (const auto& spec : state.ports) {
          if (spec.polarisation) r.fail(path + ".polarisation", "distinguishable photons enter horizontally");
        }
      }
      break;
    case StateKind::Hybrid:
      if (!any_alpha || !any_n) r.fail(path, "hybrid states need both n and alpha");
      break;
    case StateKind::CoherentPnr:
    case StateKind::CoherentIntensity:
      if (any_n) r.fail(path + ".n", "must be zero for " + kind + " states");
      if (!any_alpha) r.fail(path + ".alpha", "needs at least one non-zero amplitude");
      break;
  }
  return state;
}

EncodingCase parse_encoding(Reader& r, const json& doc, const std::string& path) {
  EncodingCase enc;
  if (!doc.is_object()) {
    r.fail(path, "expected an object");
    return enc;
  }
  const std::string preset = r.string(doc, "preset", path, "spiral");
  try {
    enc.preset = parse_preset(preset);
    if (enc.preset == EncodingPreset::Custom) throw std::invalid_argument("custom");
  } catch (const std::invalid_argument&) {
    r.fail(path + ".preset", "expected uniform-linear, multi-linear or spiral");
  }
  enc.name = r.string(doc, "name", path, preset);
  enc.slope = r.number(doc, "slope", path, 1.0);
  const std::string offsets = r.string(doc, "offsets", path, "none");
  try {
    enc.offsets = parse_offset_policy(offsets);
  } catch (const std::invalid_argument&) {
    r.fail(path + ".offsets", "expected none, staggered or random");
  }
  return enc;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::invalid_argument(join_issues(issues)), issues_(std::move(issues)) {}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  Reader r;
  ExperimentConfig cfg;
  if (!doc.is_object()) throw ConfigError({"$: expected an object"});

  const json* version = r.child(doc, "schema_version");
  if (!version || !version->is_number_integer() || version->get<int>() != kSchemaVersion) {
    r.fail("$.schema_version", "expected " + std::to_string(kSchemaVersion));
  }
  cfg.seed = r.unsigned_int(doc, "seed", "$", cfg.seed);

  const json empty = json::object();
  const json* net = r.child(doc, "network");
  const json& network = net ? *net : empty;
  cfg.network.ports = r.unsigned_int(network, "ports", "$.network", 5);
  if (cfg.network.ports < 2) r.fail("$.network.ports", "need at least 2 ports");
  if (const json* seeds = r.child(network, "seeds")) {
    if (!seeds->is_array() || seeds->empty()) {
      r.fail("$.network.seeds", "expected a non-empty array of seeds");
    } else {
      for (std::size_t i = 0; i < seeds->size(); ++i) {
        const json& s = (*seeds)[i];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
          r.fail("$.network.seeds[" + std::to_string(i) + "]", "expected a non-negative integer");
        } else {
          cfg.network.seeds.push_back((*seeds)[i].get<std::uint64_t>());
        }
      }
    }
  } else {
    const auto count = r.unsigned_int(network, "reservoirs", "$.network", 5);
    if (count == 0) r.fail("$.network.reservoirs", "need at least one reservoir");
    for (std::uint64_t i = 0; i < count; ++i) cfg.network.seeds.push_back(derive_seed({cfg.seed, 0x6e6574ULL, i}));
  }

  const std::size_t ports = cfg.network.ports;
  const json* states = r.child(doc, "states");
  if (!states || !states->is_array() || states->empty()) {
    r.fail("$.states", "expected a non-empty array");
  } else if (ports >= 2) {
    for (std::size_t i = 0; i < states->size(); ++i) {
      cfg.states.push_back(parse_state(r, (*states)[i], "$.states[" + std::to_string(i) + "]", ports));
    }
    for (std::size_t i = 0; i < cfg.states.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (cfg.states[i].name == cfg.states[j].name) {
          r.fail("$.states[" + std::to_string(i) + "].name", "duplicate name '" + cfg.states[i].name + "'");
        }
      }
    }
  }

  if (const json* encodings = r.child(doc, "encodings")) {
    if (!encodings->is_array() || encodings->empty()) {
      r.fail("$.encodings", "expected a non-empty array");
    } else {
      for (std::size_t i = 0; i < encodings->size(); ++i) {
        cfg.encodings.push_back(parse_encoding(r, (*encodings)[i], "$.encodings[" + std::to_string(i) + "]"));
      }
    }
  } else {
    cfg.encodings.push_back(parse_encoding(r, json::object(), "$.encodings[0]"));
  }

  const json* det = r.child(doc, "detector");
  const json& detector = det ? *det : empty;
  cfg.detector.eta = r.number(detector, "eta", "$.detector", cfg.detector.eta);
  cfg.detector.max_photons = static_cast<int>(r.unsigned_int(detector, "max_photons", "$.detector", 4));
  cfg.detector.n_samp = r.unsigned_int(detector, "n_samp", "$.detector", cfg.detector.n_samp);
  cfg.detector.dark_counts = r.number(detector, "dark_counts", "$.detector", 0.0);
  if (!(cfg.detector.eta >= 0.0 && cfg.detector.eta <= 1.0)) r.fail("$.detector.eta", "must lie in [0, 1]");
  if (cfg.detector.n_samp == 0) r.fail("$.detector.n_samp", "must be positive");
  if (cfg.detector.dark_counts != 0.0) r.fail("$.detector.dark_counts", "only 0 is supported");

  const json* tr = r.child(doc, "truncation");
  const json& truncation = tr ? *tr : empty;
  const std::string mode = r.string(truncation, "mode", "$.truncation", "relative");
  if (mode == "relative") {
    cfg.truncation.mode = Truncation::Mode::Relative;
  } else if (mode == "fixed-order") {
    cfg.truncation.mode = Truncation::Mode::FixedOrder;
  } else {
    r.fail("$.truncation.mode", "expected relative or fixed-order");
  }
  cfg.truncation.relative_cutoff = r.number(truncation, "relative_cutoff", "$.truncation", 0.01);
  cfg.truncation.order = static_cast<int>(r.unsigned_int(truncation, "order", "$.truncation", 6));
  if (!(cfg.truncation.relative_cutoff > 0.0 && cfg.truncation.relative_cutoff < 1.0)) {
    r.fail("$.truncation.relative_cutoff", "must lie in (0, 1)");
  }

  const json* ro = r.child(doc, "readout");
  const json& readout = ro ? *ro : empty;
  cfg.readout.rcond = r.number(readout, "rcond", "$.readout", cfg.readout.rcond);
  cfg.readout.k = r.number(readout, "k", "$.readout", cfg.readout.k);
  if (!(cfg.readout.rcond >= 0.0)) r.fail("$.readout.rcond", "must be non-negative");
  if (!(cfg.readout.k > 0.0)) r.fail("$.readout.k", "must be positive");

  const json* in = r.child(doc, "interpolation");
  const json& interp = in ? *in : empty;
  cfg.interpolation.targets = r.unsigned_int(interp, "targets", "$.interpolation", cfg.interpolation.targets);
  cfg.interpolation.bandwidth = r.number(interp, "bandwidth", "$.interpolation", cfg.interpolation.bandwidth);
  cfg.interpolation.terms = r.unsigned_int(interp, "terms", "$.interpolation", cfg.interpolation.terms);
  cfg.interpolation.grid = r.unsigned_int(interp, "grid", "$.interpolation", cfg.interpolation.grid);
  if (!(cfg.interpolation.bandwidth >= 0.0)) r.fail("$.interpolation.bandwidth", "must be non-negative");
  if (cfg.interpolation.grid < 4) r.fail("$.interpolation.grid", "need at least 4 points");

  const json* dg = r.child(doc, "diagnostics");
  const json& diag = dg ? *dg : empty;
  cfg.diagnostics.grid = r.unsigned_int(diag, "grid", "$.diagnostics", cfg.diagnostics.grid);
  cfg.diagnostics.functions = r.unsigned_int(diag, "functions", "$.diagnostics", cfg.diagnostics.functions);
  if (cfg.diagnostics.grid < 4) r.fail("$.diagnostics.grid", "need at least 4 points");

  if (const json* cl = r.child(doc, "classification")) {
    ClassificationConfig c;
    const auto resolve = [&](const std::string& p) {
      std::filesystem::path path(p);
      return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };
    const std::string images = r.string(*cl, "images", "$.classification", "");
    const std::string labels = r.string(*cl, "labels", "$.classification", "");
    if (images.empty()) r.fail("$.classification.images", "required");
    if (labels.empty()) r.fail("$.classification.labels", "required");
    c.images = resolve(images);
    c.labels = resolve(labels);
    c.components = r.unsigned_int(*cl, "components", "$.classification", c.components);
    c.max_images = r.unsigned_int(*cl, "max_images", "$.classification", 0);
    const std::size_t crossings = ports * (ports - 1) / 2;
    if (c.components != 2 * crossings) {
      r.fail("$.classification.components",
             "must equal twice the crossing count (" + std::to_string(2 * crossings) + ")");
    }
    if (const json* names = r.child(*cl, "states")) {
      if (!names->is_array()) {
        r.fail("$.classification.states", "expected an array of state names");
      } else {
        for (std::size_t i = 0; i < names->size(); ++i) {
          const json& n = (*names)[i];
          const std::string at = "$.classification.states[" + std::to_string(i) + "]";
          if (!n.is_string()) {
            r.fail(at, "expected a state name");
            continue;
          }
          const bool known = std::any_of(cfg.states.begin(), cfg.states.end(),
                                         [&](const StateCase& s) { return s.name == n.get<std::string>(); });
          if (!known) r.fail(at, "unknown state '" + n.get<std::string>() + "'");
          c.states.push_back(n.get<std::string>());
        }
      }
    }
    cfg.classification = c;
  }

  cfg.split = r.number(doc, "split", "$", cfg.split);
  if (!(cfg.split > 0.0 && cfg.split < 1.0)) r.fail("$.split", "must lie in (0, 1)");
  cfg.exact = r.boolean(doc, "exact", "$", false);
  cfg.threads = r.unsigned_int(doc, "threads", "$", 0);
  cfg.output = r.string(doc, "output", "$", "results");

  if (!r.issues.empty()) throw ConfigError(r.issues);

  cfg.document = doc;
  json canonical = doc;
  canonical.erase("output");
  canonical.erase("threads");
  cfg.hash = fnv1a_hex(canonical.dump());
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({"$: " + std::string(e.what())});
  }
  return parse_config(doc, path.parent_path());
}

json default_config() {
  return json::parse(R"({
  "schema_version": 1,
  "seed": 1,
  "network": {"ports": 5, "reservoirs": 5},
  "states": [
    {"name": "fock", "kind": "fock", "n": [1, 1, 1, 1, 0]},
    {"name": "hybrid", "kind": "hybrid", "n": [1, 1, 0, 0, 0], "alpha": [0.5, 0.5, 0, 0, 0]},
    {"name": "coherent-pnr", "kind": "coherent-pnr", "alpha": [0.5, 0.5, 0, 0, 0]},
    {"name": "distinguishable", "kind": "distinguishable", "n": [1, 1, 1, 1, 0]},
    {"name": "coherent-intensity", "kind": "coherent-intensity", "alpha": [0.5, 0.5, 0.5, 0.5, 0]}
  ],
  "encodings": [
    {"preset": "spiral"},
    {"preset": "multi-linear"},
    {"preset": "uniform-linear", "slope": 1}
  ],
  "detector": {"eta": 0.9, "max_photons": 4, "n_samp": 100000, "dark_counts": 0},
  "truncation": {"mode": "relative", "relative_cutoff": 0.01, "order": 6},
  "readout": {"rcond": 1e-10, "k": 3},
  "interpolation": {"targets": 35, "bandwidth": 16, "terms": 5, "grid": 512},
  "diagnostics": {"grid": 256, "functions": 10},
  "split": 0.5,
  "exact": false,
  "output": "results"
})");
}

}  // namespace photonrc::harness
