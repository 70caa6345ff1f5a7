#include "photonrc/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "photonrc/harness/pipeline.hpp"
#include "photonrc/harness/report.hpp"
#include "photonrc/network.hpp"
#include "photonrc/rng.hpp"

namespace photonrc::harness {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kTargetTag = 0x7461726765747300ULL;
constexpr std::uint64_t kSplitTag = 0x73706c6974000000ULL;
constexpr std::uint64_t kSampleTag = 0x73616d706c650000ULL;
constexpr std::uint64_t kOffsetTag = 0x6f66667365740000ULL;
constexpr std::uint64_t kClassifyTag = 0x636c617373000000ULL;

json provenance(const ExperimentConfig& config, const std::string& command) {
  return {{"command", command},
          {"config_hash", config.hash},
          {"seed", config.seed},
          {"rng", std::string(Rng::kName)},
          {"network_ordering", std::string(PolarisingNetwork::kOrderingTag)},
          {"exact", config.exact},
          {"n_samp", config.detector.n_samp},
          {"eta", config.detector.eta},
          {"max_photons", config.detector.max_photons}};
}

std::string num(double v) { return format_number(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::uint64_t case_sampling_seed(const ExperimentConfig& config, std::uint64_t reservoir_seed,
                                 std::size_t state, std::size_t encoding) {
  return derive_seed({config.seed, kSampleTag, reservoir_seed, state, encoding});
}

DesignMatrix evaluate_design(const ReservoirPipeline& pipeline, const std::vector<CMatrix>& unitaries,
                             std::span<const double> xs, const ExperimentConfig& config,
                             std::uint64_t sampling_seed) {
  const FeatureEvaluator evaluate = [&](std::size_t j, double) {
    return pipeline.evaluate(unitaries[j], config.exact, derive_seed({sampling_seed, j}));
  };
  return design_matrix(evaluate, xs, true, config.worker_count());
}

ReadoutWeights fit(const DesignMatrix& train_design, const Eigen::MatrixXd& labels,
                   const ExperimentConfig& config) {
  if (config.exact) return train(train_design, labels, config.readout.rcond);
  const RankReport rank = conditioned_rank(train_design, static_cast<double>(config.detector.n_samp), config.readout.k);
  const auto keep = static_cast<Eigen::Index>(rank.conditioned_rank) + (train_design.has_bias ? 1 : 0);
  return train_truncated(train_design, labels, keep);
}

void add_svals(CsvTable& table, std::uint64_t reservoir_seed, std::uint64_t sampling_seed,
               const std::string& hash, const std::string& state, const std::string& encoding,
               const RankReport& report) {
  for (std::size_t i = 0; i < report.singular_values.size(); ++i) {
    table.add_row({num(reservoir_seed), num(sampling_seed), hash, state, encoding, std::to_string(i),
                   num(report.singular_values[i])});
  }
}

std::vector<std::string> svals_header() {
  return {"reservoir_seed", "sampling_seed", "config_hash", "state", "encoding", "index", "value"};
}

}  // namespace

Split random_split(std::size_t n, double ratio, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_split: need at least two points");
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("random_split: ratio must lie in (0, 1)");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  const auto n_train = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n))), 1, n - 1);
  Split split;
  split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

FitResult fit_readout(const DesignMatrix& design, std::span<const double> values, const Split& split,
                      const ExperimentConfig& config) {
  if (values.size() != static_cast<std::size_t>(design.point_count())) {
    throw std::invalid_argument("fit_readout: target length does not match the design matrix");
  }
  const DesignMatrix train_design = design.select_columns(split.train);
  Eigen::MatrixXd labels(1, static_cast<Eigen::Index>(split.train.size()));
  for (std::size_t i = 0; i < split.train.size(); ++i) labels(0, static_cast<Eigen::Index>(i)) = values[split.train[i]];
  const ReadoutWeights readout = fit(train_design, labels, config);
  const Eigen::MatrixXd all = predict(readout, design);

  FitResult result;
  result.rank = readout.rank;
  result.predictions.assign(all.data(), all.data() + all.size());
  const auto score = [&](const std::vector<std::size_t>& idx) {
    std::vector<double> p;
    std::vector<double> y;
    for (auto i : idx) {
      p.push_back(result.predictions[i]);
      y.push_back(values[i]);
    }
    return mean_squared_error(p, y);
  };
  result.train_mse = score(split.train);
  result.test_mse = score(split.test);
  return result;
}

std::vector<std::uint64_t> reservoir_seeds(const ExperimentConfig& config) { return config.network.seeds; }

RunOutput run_interpolation(const ExperimentConfig& config) {
  const auto xs = unit_grid(config.interpolation.grid);
  const auto targets = random_targets(config.interpolation.targets, config.interpolation.bandwidth,
                                      config.interpolation.terms, derive_seed({config.seed, kTargetTag}));
  std::vector<std::vector<double>> target_values;
  for (const auto& t : targets) target_values.push_back(t.evaluate(xs));

  std::vector<ReservoirPipeline> pipelines;
  for (const auto& s : config.states) pipelines.emplace_back(s, config.detector, config.truncation);

  CsvTable mse({"reservoir_seed", "sampling_seed", "config_hash", "state", "encoding", "target",
                "train_mse", "test_mse", "readout_rank", "conditioned_rank"});
  CsvTable svals(svals_header());
  CsvTable spectra({"reservoir_seed", "sampling_seed", "config_hash", "state", "encoding", "target",
                    "frequency", "target_magnitude", "prediction_magnitude"});

  RunOutput out;
  out.results = provenance(config, "interp");
  out.results["grid"] = config.interpolation.grid;
  out.results["split"] = config.split;
  json target_docs = json::array();
  for (const auto& t : targets) {
    json terms = json::array();
    for (const auto& term : t.terms) {
      terms.push_back({{"amplitude", term.amplitude}, {"frequency", term.frequency}, {"phase", term.phase}});
    }
    target_docs.push_back(terms);
  }
  out.results["targets"] = target_docs;

  // (state, encoding) -> test MSEs and ranks over reservoirs and targets
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> pooled_mse;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> pooled_rank;
  json cases = json::array();

  for (const auto reservoir_seed : config.network.seeds) {
    const PolarisingNetwork network = random_reservoir(config.network.ports, reservoir_seed);
    std::vector<Split> splits;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      splits.push_back(random_split(xs.size(), config.split, derive_seed({config.seed, kSplitTag, reservoir_seed, t})));
    }
    for (std::size_t e = 0; e < config.encodings.size(); ++e) {
      const auto& enc = config.encodings[e];
      const auto scheme = make_scheme(enc, config.network.ports, derive_seed({reservoir_seed, kOffsetTag, e}));
      const auto unitaries = encoded_unitaries(network, scheme, xs);
      for (std::size_t s = 0; s < pipelines.size(); ++s) {
        const auto& state = config.states[s];
        const std::uint64_t sampling_seed = case_sampling_seed(config, reservoir_seed, s, e);
        const DesignMatrix design = evaluate_design(pipelines[s], unitaries, xs, config, sampling_seed);
        const RankReport rank = conditioned_rank(design, static_cast<double>(config.detector.n_samp), config.readout.k);
        add_svals(svals, reservoir_seed, sampling_seed, config.hash, state.name, enc.name, rank);

        std::vector<double> test_mse;
        for (std::size_t t = 0; t < targets.size(); ++t) {
          const FitResult fitted = fit_readout(design, target_values[t], splits[t], config);
          test_mse.push_back(fitted.test_mse);
          mse.add_row({num(reservoir_seed), num(sampling_seed), config.hash, state.name, enc.name,
                       std::to_string(t), num(fitted.train_mse), num(fitted.test_mse),
                       std::to_string(fitted.rank), std::to_string(rank.conditioned_rank)});
          const Spectrum target_spectrum = fourier_spectrum(xs, target_values[t]);
          const Spectrum fit_spectrum = fourier_spectrum(xs, fitted.predictions);
          const double floor = kSpectrumFloor * std::max(target_spectrum.dc, *std::max_element(
              target_spectrum.magnitudes.begin(), target_spectrum.magnitudes.end()));
          for (std::size_t k = 0; k < fit_spectrum.frequencies.size(); ++k) {
            if (target_spectrum.magnitudes[k] <= floor && fit_spectrum.magnitudes[k] <= floor) continue;
            spectra.add_row({num(reservoir_seed), num(sampling_seed), config.hash, state.name, enc.name,
                             std::to_string(t), num(fit_spectrum.frequencies[k]),
                             num(target_spectrum.magnitudes[k]), num(fit_spectrum.magnitudes[k])});
          }
        }
        pooled_mse[{s, e}].insert(pooled_mse[{s, e}].end(), test_mse.begin(), test_mse.end());
        pooled_rank[{s, e}].push_back(static_cast<double>(rank.conditioned_rank));
        const auto flagged = static_cast<std::size_t>(std::count(design.flagged.begin(), design.flagged.end(), true));
        cases.push_back({{"reservoir_seed", reservoir_seed},
                         {"sampling_seed", sampling_seed},
                         {"state", state.name},
                         {"encoding", enc.name},
                         {"features", design.feature_count()},
                         {"conditioned_rank", rank.conditioned_rank},
                         {"flagged_columns", flagged},
                         {"median_test_mse", median(test_mse)},
                         {"mean_test_mse", mean(test_mse)}});
      }
    }
  }

  json summary = json::array();
  for (std::size_t e = 0; e < config.encodings.size(); ++e) {
    for (std::size_t s = 0; s < config.states.size(); ++s) {
      const auto& m = pooled_mse[{s, e}];
      summary.push_back({{"state", config.states[s].name},
                         {"encoding", config.encodings[e].name},
                         {"median_test_mse", median(m)},
                         {"mean_test_mse", mean(m)},
                         {"mean_conditioned_rank", mean(pooled_rank[{s, e}])},
                         {"fits", m.size()}});
    }
  }
  out.results["cases"] = cases;
  out.results["summary"] = summary;
  out.files["mse.csv"] = mse.str();
  out.files["svals.csv"] = svals.str();
  out.files["spectra.csv"] = spectra.str();
  return out;
}

RunOutput run_diagnostics(const ExperimentConfig& config) {
  const auto xs = unit_grid(config.diagnostics.grid);
  std::vector<ReservoirPipeline> pipelines;
  for (const auto& s : config.states) pipelines.emplace_back(s, config.detector, config.truncation);

  CsvTable svals(svals_header());
  CsvTable spectra({"reservoir_seed", "sampling_seed", "config_hash", "state", "encoding", "feature",
                    "frequency", "magnitude"});
  CsvTable functions({"reservoir_seed", "sampling_seed", "config_hash", "state", "encoding", "feature",
                      "x", "value"});
  RunOutput out;
  out.results = provenance(config, "diagnose");
  out.results["grid"] = config.diagnostics.grid;
  json cases = json::array();
  std::map<std::pair<std::size_t, std::size_t>, std::vector<RankReport>> reports;

  for (const auto reservoir_seed : config.network.seeds) {
    const PolarisingNetwork network = random_reservoir(config.network.ports, reservoir_seed);
    for (std::size_t e = 0; e < config.encodings.size(); ++e) {
      const auto& enc = config.encodings[e];
      const auto scheme = make_scheme(enc, config.network.ports, derive_seed({reservoir_seed, kOffsetTag, e}));
      const auto unitaries = encoded_unitaries(network, scheme, xs);
      for (std::size_t s = 0; s < pipelines.size(); ++s) {
        const auto& state = config.states[s];
        const auto& labels = pipelines[s].feature_labels();
        const std::uint64_t sampling_seed = case_sampling_seed(config, reservoir_seed, s, e);
        const DesignMatrix design = evaluate_design(pipelines[s], unitaries, xs, config, sampling_seed);
        const RankReport rank = conditioned_rank(design, static_cast<double>(config.detector.n_samp), config.readout.k);
        reports[{s, e}].push_back(rank);
        add_svals(svals, reservoir_seed, sampling_seed, config.hash, state.name, enc.name, rank);

        const Eigen::MatrixXd features = design.features();
        std::vector<Spectrum> feature_spectra;
        for (Eigen::Index f = 0; f < features.rows(); ++f) {
          const Eigen::VectorXd row = features.row(f).transpose();
          feature_spectra.push_back(fourier_spectrum(xs, std::span<const double>(row.data(), static_cast<std::size_t>(row.size()))));
        }
        double peak = 0.0;
        for (const auto& sp : feature_spectra) {
          peak = std::max(peak, sp.dc);
          for (double m : sp.magnitudes) peak = std::max(peak, m);
        }
        for (std::size_t f = 0; f < feature_spectra.size(); ++f) {
          const auto& sp = feature_spectra[f];
          for (std::size_t k = 0; k < sp.frequencies.size(); ++k) {
            if (sp.magnitudes[k] <= kSpectrumFloor * peak) continue;
            spectra.add_row({num(reservoir_seed), num(sampling_seed), config.hash, state.name, enc.name,
                             labels[f], num(sp.frequencies[k]), num(sp.magnitudes[k])});
          }
        }
        const auto support = spectrum_support(feature_spectra);

        std::vector<std::size_t> order(static_cast<std::size_t>(features.rows()));
        std::iota(order.begin(), order.end(), 0);
        const Eigen::VectorXd row_mean = features.rowwise().mean();
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          return row_mean(static_cast<Eigen::Index>(a)) > row_mean(static_cast<Eigen::Index>(b));
        });
        order.resize(std::min(order.size(), config.diagnostics.functions));
        for (auto f : order) {
          for (std::size_t j = 0; j < xs.size(); ++j) {
            functions.add_row({num(reservoir_seed), num(sampling_seed), config.hash, state.name, enc.name,
                               labels[f], num(xs[j]),
                               num(features(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(j)))});
          }
        }

        const double sv_sum = std::accumulate(rank.singular_values.begin(), rank.singular_values.end(), 0.0);
        cases.push_back({{"reservoir_seed", reservoir_seed},
                         {"sampling_seed", sampling_seed},
                         {"state", state.name},
                         {"encoding", enc.name},
                         {"features", design.feature_count()},
                         {"conditioned_rank", rank.conditioned_rank},
                         {"threshold", rank.threshold},
                         {"numerical_rank", numerical_rank(design)},
                         {"n_omega", support.size()},
                         {"max_frequency", support.empty() ? 0.0 : support.back()},
                         {"singular_value_sum", sv_sum}});
      }
    }
  }

  json summary = json::array();
  for (std::size_t e = 0; e < config.encodings.size(); ++e) {
    for (std::size_t s = 0; s < config.states.size(); ++s) {
      const auto& group = reports[{s, e}];
      const std::size_t len = group.front().singular_values.size();
      std::vector<double> avg(len, 0.0);
      std::vector<double> dev(len, 0.0);
      std::vector<double> ranks;
      for (const auto& r : group) {
        ranks.push_back(static_cast<double>(r.conditioned_rank));
        for (std::size_t i = 0; i < len; ++i) avg[i] += r.singular_values[i] / static_cast<double>(group.size());
      }
      for (const auto& r : group) {
        for (std::size_t i = 0; i < len; ++i) {
          const double d = r.singular_values[i] - avg[i];
          dev[i] += d * d / static_cast<double>(group.size());
        }
      }
      for (auto& d : dev) d = std::sqrt(d);
      summary.push_back({{"state", config.states[s].name},
                         {"encoding", config.encodings[e].name},
                         {"mean_conditioned_rank", mean(ranks)},
                         {"singular_values_mean", avg},
                         {"singular_values_std", dev}});
    }
  }
  out.results["cases"] = cases;
  out.results["summary"] = summary;
  out.files["svals.csv"] = svals.str();
  out.files["spectra.csv"] = spectra.str();
  out.files["functions.csv"] = functions.str();
  return out;
}

RunOutput run_classification(const ExperimentConfig& config) {
  if (!config.classification) throw std::invalid_argument("config has no classification section");
  const auto& c = *config.classification;
  return run_classification(config, load_dataset(c.images, c.labels, c.max_images));
}

RunOutput run_classification(const ExperimentConfig& config, const ImageDataset& data) {
  const std::size_t ports = config.network.ports;
  const std::size_t components = config.classification ? config.classification->components : ports * (ports - 1);
  const std::size_t classes = std::max<std::size_t>(data.class_count(), 2);
  const Split split = random_split(data.size(), config.split, derive_seed({config.seed, kSplitTag, kClassifyTag}));

  Eigen::MatrixXd train_images(static_cast<Eigen::Index>(split.train.size()), data.images.cols());
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    train_images.row(static_cast<Eigen::Index>(i)) = data.images.row(static_cast<Eigen::Index>(split.train[i]));
  }
  const Pca pca = fit_pca(train_images, components);
  const Eigen::MatrixXd projected = pca.transform(data.images);
  double scale = 0.0;
  for (auto i : split.train) scale = std::max(scale, projected.row(static_cast<Eigen::Index>(i)).cwiseAbs().maxCoeff());
  if (scale == 0.0) scale = 1.0;
  const Eigen::MatrixXd normalised = (0.5 + 0.5 * projected.array() / scale).matrix();

  std::vector<std::size_t> selected;
  for (std::size_t s = 0; s < config.states.size(); ++s) {
    const bool wanted = !config.classification || config.classification->states.empty() ||
                        std::count(config.classification->states.begin(), config.classification->states.end(),
                                   config.states[s].name) > 0;
    if (wanted) selected.push_back(s);
  }

  std::vector<std::size_t> train_labels;
  std::vector<std::size_t> test_labels;
  for (auto i : split.train) train_labels.push_back(data.labels[i]);
  for (auto i : split.test) test_labels.push_back(data.labels[i]);
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(classes), static_cast<Eigen::Index>(split.train.size()));
  for (std::size_t i = 0; i < train_labels.size(); ++i) onehot(static_cast<Eigen::Index>(train_labels[i]), static_cast<Eigen::Index>(i)) = 1.0;

  const std::size_t majority = majority_class(train_labels, classes);
  const std::vector<std::size_t> majority_train(train_labels.size(), majority);
  const std::vector<std::size_t> majority_test(test_labels.size(), majority);
  const auto majority_train_report = classification_metrics(majority_train, train_labels, classes);
  const auto majority_test_report = classification_metrics(majority_test, test_labels, classes);

  CsvTable table({"reservoir_seed", "sampling_seed", "config_hash", "state", "split", "accuracy", "mcc"});
  CsvTable svals(svals_header());
  RunOutput out;
  out.results = provenance(config, "classify");
  out.results["images"] = data.size();
  out.results["classes"] = classes;
  out.results["components"] = components;
  out.results["train_size"] = split.train.size();
  out.results["test_size"] = split.test.size();
  out.results["pca_explained_variance"] = std::vector<double>(pca.eigenvalues.data(), pca.eigenvalues.data() + pca.eigenvalues.size());
  out.results["majority"] = {{"class", majority},
                             {"train_accuracy", majority_train_report.accuracy},
                             {"train_mcc", majority_train_report.mcc},
                             {"test_accuracy", majority_test_report.accuracy},
                             {"test_mcc", majority_test_report.mcc}};
  json cases = json::array();
  std::map<std::size_t, std::vector<double>> test_accuracy;

  std::vector<double> xs(data.size());
  std::iota(xs.begin(), xs.end(), 0.0);
  for (const auto reservoir_seed : config.network.seeds) {
    const PolarisingNetwork first = random_reservoir(ports, derive_seed({reservoir_seed, 1}));
    const PolarisingNetwork mesh = random_reservoir(ports, derive_seed({reservoir_seed, 2}));
    const PolarisingNetwork second = random_reservoir(ports, derive_seed({reservoir_seed, 3}));
    std::vector<CMatrix> unitaries;
    unitaries.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      const Eigen::VectorXd f = normalised.row(static_cast<Eigen::Index>(i)).transpose();
      unitaries.push_back(feature_encoded_network(std::span<const double>(f.data(), static_cast<std::size_t>(f.size())), first, mesh, second));
    }
    table.add_row({num(reservoir_seed), "0", config.hash, "majority", "train", num(majority_train_report.accuracy), num(majority_train_report.mcc)});
    table.add_row({num(reservoir_seed), "0", config.hash, "majority", "test", num(majority_test_report.accuracy), num(majority_test_report.mcc)});

    for (const auto s : selected) {
      const auto& state = config.states[s];
      const ReservoirPipeline pipeline(state, config.detector, config.truncation);
      const std::uint64_t sampling_seed = case_sampling_seed(config, reservoir_seed, s, kClassifyTag);
      const DesignMatrix design = evaluate_design(pipeline, unitaries, xs, config, sampling_seed);
      const DesignMatrix train_design = design.select_columns(split.train);
      const RankReport rank = conditioned_rank(train_design, static_cast<double>(config.detector.n_samp), config.readout.k);
      add_svals(svals, reservoir_seed, sampling_seed, config.hash, state.name, "feature-encoded", rank);
      const ReadoutWeights readout = fit(train_design, onehot, config);
      const Eigen::MatrixXd scores = predict(readout, design);
      const auto classify = [&](const std::vector<std::size_t>& idx) {
        std::vector<std::size_t> predicted;
        for (auto i : idx) predicted.push_back(argmax(scores.col(static_cast<Eigen::Index>(i))));
        return predicted;
      };
      const auto train_report = classification_metrics(classify(split.train), train_labels, classes);
      const auto test_report = classification_metrics(classify(split.test), test_labels, classes);
      test_accuracy[s].push_back(test_report.accuracy);
      table.add_row({num(reservoir_seed), num(sampling_seed), config.hash, state.name, "train", num(train_report.accuracy), num(train_report.mcc)});
      table.add_row({num(reservoir_seed), num(sampling_seed), config.hash, state.name, "test", num(test_report.accuracy), num(test_report.mcc)});
      cases.push_back({{"reservoir_seed", reservoir_seed},
                       {"sampling_seed", sampling_seed},
                       {"state", state.name},
                       {"conditioned_rank", rank.conditioned_rank},
                       {"readout_rank", readout.rank},
                       {"train_accuracy", train_report.accuracy},
                       {"train_mcc", train_report.mcc},
                       {"test_accuracy", test_report.accuracy},
                       {"test_mcc", test_report.mcc},
                       {"test_confusion", test_report.confusion}});
    }
  }
  json summary = json::array();
  for (const auto s : selected) {
    summary.push_back({{"state", config.states[s].name}, {"mean_test_accuracy", mean(test_accuracy[s])}});
  }
  out.results["cases"] = cases;
  out.results["summary"] = summary;
  out.files["classification.csv"] = table.str();
  out.files["svals.csv"] = svals.str();
  return out;
}

RunOutput show_networks(const ExperimentConfig& config) {
  RunOutput out;
  out.results = provenance(config, "show-network");
  json networks = json::array();
  for (const auto seed : config.network.seeds) {
    const PolarisingNetwork network = random_reservoir(config.network.ports, seed);
    json doc = to_json(network);
    doc["unitarity_error"] = unitarity_error(network.unitary());
    networks.push_back(doc);
  }
  out.results["networks"] = networks;
  return out;
}

}  // namespace photonrc::harness
