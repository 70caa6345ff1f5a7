#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "photonrc/harness/config.hpp"
#include "photonrc/harness/experiments.hpp"
#include "photonrc/harness/report.hpp"

namespace {

namespace fs = std::filesystem;
using namespace photonrc::harness;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool exact = false;
  std::optional<std::uint64_t> nsamp;
  std::optional<std::size_t> threads;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config, "Experiment config (JSON); built-in defaults when omitted")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opt.seed, "Override the top-level seed");
  cmd->add_option("--out", opt.out, "Output directory");
  cmd->add_flag("--exact", opt.exact, "Use exact probabilities instead of sampling");
  cmd->add_option("--nsamp", opt.nsamp, "Override detector.n_samp")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", opt.threads, "Worker threads (0: all cores)");
}

ExperimentConfig resolve(const Options& opt) {
  nlohmann::json doc;
  fs::path base;
  if (opt.config.empty()) {
    doc = default_config();
  } else {
    std::ifstream in(opt.config);
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError({"$: " + std::string(e.what())});
    }
    base = fs::path(opt.config).parent_path();
  }
  if (opt.seed) doc["seed"] = *opt.seed;
  if (opt.out) doc["output"] = *opt.out;
  if (opt.exact) doc["exact"] = true;
  if (opt.nsamp) doc["detector"]["n_samp"] = *opt.nsamp;
  if (opt.threads) doc["threads"] = *opt.threads;
  return parse_config(doc, base);
}

void finish(const RunOutput& output, const ExperimentConfig& config) {
  write_outputs(output, config.output);
  std::cout << "wrote " << (output.files.size() + 1) << " files to " << config.output.string()
            << " (config " << config.hash << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-number-resolving quantum reservoir simulator"};
  app.require_subcommand(1);
  Options opt;
  auto* interp = app.add_subcommand("interp", "Random function interpolation benchmark");
  auto* classify = app.add_subcommand("classify", "Image classification with feature-encoded networks");
  auto* diagnose = app.add_subcommand("diagnose", "Output functions, Fourier spectra and singular values");
  auto* show = app.add_subcommand("show-network", "Print the configured reservoirs as JSON");
  for (auto* cmd : {interp, classify, diagnose, show}) add_common(cmd, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig config = resolve(opt);
    if (interp->parsed()) {
      finish(run_interpolation(config), config);
    } else if (classify->parsed()) {
      finish(run_classification(config), config);
    } else if (diagnose->parsed()) {
      finish(run_diagnostics(config), config);
    } else if (show->parsed()) {
      const RunOutput output = show_networks(config);
      std::cout << output.results.dump(2) << "\n";
      if (opt.out) write_outputs(output, config.output);
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
