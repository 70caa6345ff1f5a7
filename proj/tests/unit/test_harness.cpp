#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "photonrc/rng.hpp"
#include "photonrc/harness/config.hpp"
#include "photonrc/harness/dataset.hpp"
#include "photonrc/harness/experiments.hpp"
#include "photonrc/harness/pipeline.hpp"
#include "photonrc/harness/report.hpp"
#include "photonrc/harness/targets.hpp"

namespace fs = std::filesystem;
namespace h = photonrc::harness;
using nlohmann::json;

namespace {

json small_config() {
  return json::parse(R"({
    "schema_version": 1,
    "seed": 3,
    "network": {"ports": 3, "reservoirs": 2},
    "states": [
      {"name": "fock", "kind": "fock", "n": [1, 1, 0]},
      {"name": "intensity", "kind": "coherent-intensity", "alpha": [0.5, 0.5, 0]}
    ],
    "encodings": [{"preset": "spiral"}],
    "detector": {"eta": 0.9, "max_photons": 2, "n_samp": 1000},
    "interpolation": {"targets": 3, "bandwidth": 3, "terms": 2, "grid": 32},
    "diagnostics": {"grid": 32, "functions": 3}
  })");
}

bool mentions(const h::ConfigError& e, const std::string& path) {
  return std::any_of(e.issues().begin(), e.issues().end(),
                     [&](const std::string& s) { return s.rfind(path, 0) == 0; });
}

std::vector<std::string> error_paths(const json& doc) {
  try {
    h::parse_config(doc);
  } catch (const h::ConfigError& e) {
    return e.issues();
  }
  return {};
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("photonrc_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Config, DefaultParses) {
  const auto cfg = h::parse_config(h::default_config());
  EXPECT_EQ(cfg.network.ports, 5u);
  EXPECT_EQ(cfg.network.seeds.size(), 5u);
  EXPECT_EQ(cfg.states.size(), 5u);
  EXPECT_EQ(cfg.encodings.size(), 3u);
  EXPECT_EQ(cfg.detector.eta, 0.9);
  EXPECT_EQ(cfg.detector.max_photons, 4);
  EXPECT_EQ(cfg.split, 0.5);
  EXPECT_FALSE(cfg.hash.empty());

  const auto& hybrid = cfg.states[1];
  EXPECT_EQ(hybrid.kind, h::StateKind::Hybrid);
  EXPECT_EQ(hybrid.ports[0].n, 1);
  EXPECT_EQ(hybrid.ports[0].alpha, photonrc::Complex(0.5, 0.0));
  EXPECT_TRUE(cfg.states[3].ports[0].distinguishable);
  EXPECT_FALSE(cfg.states[4].photon_resolving());
}

TEST(Config, ReservoirSeedsDeterministic) {
  const auto a = h::parse_config(h::default_config());
  const auto b = h::parse_config(h::default_config());
  EXPECT_EQ(a.network.seeds, b.network.seeds);
  EXPECT_EQ(std::set<std::uint64_t>(a.network.seeds.begin(), a.network.seeds.end()).size(), 5u);
  auto doc = h::default_config();
  doc["network"]["seeds"] = {11, 12};
  EXPECT_EQ(h::parse_config(doc).network.seeds, (std::vector<std::uint64_t>{11, 12}));
}

TEST(Config, HashIgnoresOutputAndThreads) {
  auto a = h::default_config();
  auto b = a;
  b["output"] = "elsewhere";
  b["threads"] = 7;
  EXPECT_EQ(h::parse_config(a).hash, h::parse_config(b).hash);
  b["seed"] = 2;
  EXPECT_NE(h::parse_config(a).hash, h::parse_config(b).hash);
}

TEST(Config, Fnv1aVectors) {
  EXPECT_EQ(h::fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(h::fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Config, ErrorsCarryPaths) {
  auto doc = h::default_config();
  doc["split"] = 1.5;
  doc["states"][2]["n"] = {1, 2};
  doc["encodings"][0]["preset"] = "zigzag";
  doc["detector"]["eta"] = -0.1;
  doc["detector"]["dark_counts"] = 0.01;
  try {
    h::parse_config(doc);
    FAIL() << "expected ConfigError";
  } catch (const h::ConfigError& e) {
    EXPECT_TRUE(mentions(e, "$.split"));
    EXPECT_TRUE(mentions(e, "$.states[2].n"));
    EXPECT_TRUE(mentions(e, "$.encodings[0].preset"));
    EXPECT_TRUE(mentions(e, "$.detector.eta"));
    EXPECT_TRUE(mentions(e, "$.detector.dark_counts"));
    EXPECT_GE(e.issues().size(), 5u);
  }
}

TEST(Config, StateKindRules) {
  auto doc = h::default_config();
  doc["states"][3]["alpha"] = {0.5, 0, 0, 0, 0};
  EXPECT_FALSE(error_paths(doc).empty());

  doc = h::default_config();
  doc["states"][4]["n"] = {1, 0, 0, 0, 0};
  EXPECT_FALSE(error_paths(doc).empty());

  doc = h::default_config();
  doc["states"][1]["name"] = "fock";
  const auto issues = error_paths(doc);
  ASSERT_FALSE(issues.empty());
  EXPECT_NE(issues[0].find("$.states[1].name"), std::string::npos);

  doc = h::default_config();
  doc["states"][0]["kind"] = "squeezed";
  EXPECT_FALSE(error_paths(doc).empty());
}

TEST(Config, ComplexAmplitudesAndPolarisation) {
  auto doc = small_config();
  doc["states"][1]["alpha"] = json::array({json::array({0.3, -0.4}), 0.5, 0});
  doc["states"][0]["polarisation"] = json::array({json{{"theta", 0.2}, {"phi", 1.0}}, nullptr, nullptr});
  const auto cfg = h::parse_config(doc);
  EXPECT_EQ(cfg.states[1].ports[0].alpha, photonrc::Complex(0.3, -0.4));
  ASSERT_TRUE(cfg.states[0].ports[0].polarisation.has_value());
  EXPECT_EQ(cfg.states[0].ports[0].polarisation->theta, 0.2);
  EXPECT_FALSE(cfg.states[0].ports[1].polarisation.has_value());
}

TEST(Config, SchemaVersionAndClassification) {
  auto doc = h::default_config();
  doc["schema_version"] = 2;
  EXPECT_FALSE(error_paths(doc).empty());

  doc = h::default_config();
  doc["classification"] = {{"images", "a.bin"}, {"labels", "b.bin"}, {"components", 12}, {"states", {"nope"}}};
  try {
    h::parse_config(doc, "/data");
    FAIL();
  } catch (const h::ConfigError& e) {
    EXPECT_TRUE(mentions(e, "$.classification.components"));
    EXPECT_TRUE(mentions(e, "$.classification.states[0]"));
  }
  doc["classification"] = {{"images", "a.bin"}, {"labels", "b.bin"}};
  const auto cfg = h::parse_config(doc, "/data");
  ASSERT_TRUE(cfg.classification.has_value());
  EXPECT_EQ(cfg.classification->images, fs::path("/data/a.bin"));
  EXPECT_EQ(cfg.classification->components, 20u);
}

TEST(Config, LoadFromFile) {
  const auto dir = scratch_dir("config");
  std::ofstream(dir / "c.json") << small_config().dump();
  const auto cfg = h::load_config(dir / "c.json");
  EXPECT_EQ(cfg.network.ports, 3u);
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_THROW(h::load_config(dir / "bad.json"), h::ConfigError);
  EXPECT_THROW(h::load_config(dir / "missing.json"), std::exception);
}

TEST(Targets, CountDistinctAndDeterministic) {
  const auto a = h::random_targets(35, 4.0, 5, 9);
  const auto b = h::random_targets(35, 4.0, 5, 9);
  ASSERT_EQ(a.size(), 35u);
  std::set<double> firsts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].terms.size(), 5u);
    firsts.insert(a[i](0.3));
    for (std::size_t k = 0; k < 5; ++k) {
      EXPECT_EQ(a[i].terms[k].frequency, b[i].terms[k].frequency);
      EXPECT_GE(a[i].terms[k].frequency, 0.0);
      EXPECT_LE(a[i].terms[k].frequency, 4.0);
      EXPECT_GE(a[i].terms[k].amplitude, 0.0);
      EXPECT_LE(a[i].terms[k].amplitude, 1.0);
      EXPECT_GE(a[i].terms[k].phase, 0.0);
      EXPECT_LT(a[i].terms[k].phase, 2 * photonrc::kPi);
    }
  }
  EXPECT_EQ(firsts.size(), 35u);
}

TEST(Targets, ZeroBandwidthIsConstant) {
  for (const auto& t : h::random_targets(4, 0.0, 5, 1)) {
    const std::vector<double> xs = {0.0, 0.25, 0.5, 0.99};
    const auto v = t.evaluate(xs);
    for (double y : v) EXPECT_DOUBLE_EQ(y, v[0]);
  }
}

TEST(Targets, Evaluation) {
  h::TargetFunction f;
  f.terms = {{2.0, 1.0, 0.0}, {0.5, 3.0, photonrc::kPi / 2}};
  EXPECT_NEAR(f(0.0), 2.0, 1e-15);
  EXPECT_NEAR(f(0.25), 2.0 * std::cos(photonrc::kPi / 2) + 0.5 * std::cos(1.5 * photonrc::kPi + photonrc::kPi / 2), 1e-12);
}

TEST(Split, DisjointExhaustiveSorted) {
  for (std::size_t n : {2u, 7u, 128u, 513u}) {
    const auto s = h::random_split(n, 0.5, 17);
    EXPECT_EQ(s.train.size(), static_cast<std::size_t>(std::lround(0.5 * static_cast<double>(n))));
    EXPECT_TRUE(std::is_sorted(s.train.begin(), s.train.end()));
    EXPECT_TRUE(std::is_sorted(s.test.begin(), s.test.end()));
    std::set<std::size_t> all(s.train.begin(), s.train.end());
    all.insert(s.test.begin(), s.test.end());
    EXPECT_EQ(all.size(), n);
    EXPECT_EQ(s.train.size() + s.test.size(), n);
    if (n > 0) EXPECT_EQ(*all.rbegin(), n - 1);
  }
  EXPECT_EQ(h::random_split(100, 0.5, 1).train, h::random_split(100, 0.5, 1).train);
  EXPECT_NE(h::random_split(100, 0.5, 1).train, h::random_split(100, 0.5, 2).train);
}

TEST(Dataset, RoundTrip) {
  const auto dir = scratch_dir("dataset");
  h::ImageDataset d;
  d.height = 2;
  d.width = 3;
  d.channels = 1;
  d.images.resize(3, 6);
  for (Eigen::Index i = 0; i < 18; ++i) d.images(i / 6, i % 6) = static_cast<double>((i * 37) % 256) / 255.0;
  d.labels = {0, 2, 1};
  h::save_dataset(d, dir / "img.bin", dir / "lab.bin");
  const auto back = h::load_dataset(dir / "img.bin", dir / "lab.bin");
  EXPECT_EQ(back.labels, d.labels);
  EXPECT_EQ(back.height, 2u);
  EXPECT_EQ(back.width, 3u);
  EXPECT_EQ(back.class_count(), 3u);
  EXPECT_LT((back.images - d.images).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(h::load_dataset(dir / "img.bin", dir / "lab.bin", 2).size(), 2u);
}

TEST(Dataset, MalformedFilesRejected) {
  const auto dir = scratch_dir("malformed");
  EXPECT_THROW(h::load_dataset(dir / "none.bin", dir / "none2.bin"), std::runtime_error);

  h::ImageDataset d;
  d.height = d.width = 2;
  d.images = Eigen::MatrixXd::Constant(2, 4, 0.5);
  d.labels = {0, 1};
  h::save_dataset(d, dir / "img.bin", dir / "lab.bin");
  fs::resize_file(dir / "img.bin", fs::file_size(dir / "img.bin") - 1);
  EXPECT_THROW(h::load_dataset(dir / "img.bin", dir / "lab.bin"), std::runtime_error);

  h::save_dataset(d, dir / "img.bin", dir / "lab.bin");
  h::ImageDataset three = d;
  three.images = Eigen::MatrixXd::Constant(3, 4, 0.5);
  three.labels = {0, 1, 1};
  h::save_dataset(three, dir / "img3.bin", dir / "lab3.bin");
  EXPECT_THROW(h::load_dataset(dir / "img.bin", dir / "lab3.bin"), std::runtime_error);
}

TEST(Dataset, GaussianBlobs) {
  const auto d = h::gaussian_blobs(10, 4, 6.0, 0.5, 3);
  EXPECT_EQ(d.size(), 20u);
  EXPECT_EQ(d.images.cols(), 4);
  EXPECT_EQ(d.class_count(), 2u);
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    (d.labels[i] == 0 ? m0 : m1) += d.images(static_cast<Eigen::Index>(i), 0) / 10.0;
  }
  EXPECT_GT(std::abs(m0 - m1), 4.0);
}

TEST(Report, CsvQuotingAndNumbers) {
  h::CsvTable t({"a", "b"});
  t.add_row({"1", "x,y"});
  t.add_row({"say \"hi\"", "2"});
  EXPECT_EQ(t.str(), "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",2\n");
  EXPECT_THROW(t.add_row({"only one"}), std::invalid_argument);
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(h::format_number(v)), v);
}

TEST(Pipeline, SinglePhotonShapeAndNormalisation) {
  h::StateCase state{"one", h::StateKind::Fock, std::vector<photonrc::PortStateSpec>(2)};
  state.ports[0].n = 1;
  const h::ReservoirPipeline pipeline(state, {0.9, 4, 1000, 0.0}, {});
  EXPECT_EQ(pipeline.feature_count(), photonrc::enumerate_up_to(2, 4).size());
  const auto net = photonrc::random_reservoir(2, 4);
  const std::vector<double> xs = {0.2, 0.7};
  const auto scheme = photonrc::make_preset("spiral", 2);
  const auto us = h::encoded_unitaries(net, scheme, xs);
  const auto design = photonrc::design_matrix(
      [&](std::size_t i, double) { return pipeline.exact(us[i]); }, xs);
  EXPECT_EQ(design.values.rows(), static_cast<Eigen::Index>(pipeline.feature_count() + 1));
  EXPECT_EQ(design.values.cols(), 2);
  for (Eigen::Index j = 0; j < 2; ++j) EXPECT_NEAR(design.features().col(j).sum(), 1.0, 1e-12);
}

TEST(Pipeline, RepeatedPointsGiveIdenticalColumns) {
  const auto cfg = h::parse_config(h::default_config());
  const h::ReservoirPipeline pipeline(cfg.states[0], cfg.detector, cfg.truncation);
  const auto net = photonrc::random_reservoir(5, 8);
  const std::vector<double> xs = {0.3, 0.3};
  const auto us = h::encoded_unitaries(net, photonrc::make_preset("spiral", 5), xs);
  EXPECT_EQ(pipeline.exact(us[0]).values, pipeline.exact(us[1]).values);
  const auto a = pipeline.sampled(us[0], 5000, 1);
  const auto b = pipeline.sampled(us[0], 5000, 1);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NEAR(a.values.sum(), 1.0, 1e-12);
}

TEST(Pipeline, DistinguishableMatchesManualChain) {
  const auto cfg = h::parse_config(h::default_config());
  const auto& state = cfg.states[3];
  const h::ReservoirPipeline pipeline(state, cfg.detector, cfg.truncation);
  const auto u = photonrc::random_reservoir(5, 9).unitary();
  const auto dist = photonrc::propagate_distinguishable({1, 0, 1, 0, 1, 0, 1, 0, 0, 0}, u);
  const auto sel = photonrc::postselect(photonrc::apply_loss(photonrc::trace_polarisation(dist), 0.9), 4);
  const auto got = pipeline.detect(u);
  for (const auto& [occ, p] : sel.kept.probabilities()) EXPECT_NEAR(got.kept.probability(occ), p, 1e-12);
  EXPECT_NEAR(got.reject_probability, sel.reject_probability, 1e-12);
}

TEST(Pipeline, IntensityFeatures) {
  const auto cfg = h::parse_config(h::default_config());
  const h::ReservoirPipeline pipeline(cfg.states[4], cfg.detector, cfg.truncation);
  EXPECT_EQ(pipeline.feature_count(), 5u);
  const auto u = photonrc::random_reservoir(5, 10).unitary();
  const auto col = pipeline.exact(u);
  const auto want = photonrc::intensity_expectation(cfg.states[4].ports, u);
  for (std::size_t m = 0; m < 5; ++m) EXPECT_NEAR(col.values(static_cast<Eigen::Index>(m)), want[m], 1e-14);
  EXPECT_EQ(pipeline.sampled(u, 10, 3).values, col.values);
}

TEST(Interpolation, RealisableTargetFitsExactly) {
  auto doc = small_config();
  doc["exact"] = true;
  const auto cfg = h::parse_config(doc);
  const h::ReservoirPipeline pipeline(cfg.states[0], cfg.detector, cfg.truncation);
  const auto xs = h::unit_grid(64);
  const auto us = h::encoded_unitaries(photonrc::random_reservoir(3, 5), photonrc::make_preset("spiral", 3), xs);
  const auto design = photonrc::design_matrix([&](std::size_t i, double) { return pipeline.exact(us[i]); }, xs);
  photonrc::Rng rng(6);
  Eigen::VectorXd w(design.values.rows());
  for (auto& v : w) v = rng.uniform(-1.0, 1.0);
  const Eigen::VectorXd y = design.values.transpose() * w;
  const std::vector<double> values(y.data(), y.data() + y.size());
  const auto fit = h::fit_readout(design, values, h::random_split(64, 0.5, 2), cfg);
  EXPECT_LT(fit.train_mse, 1e-20);
  EXPECT_LT(fit.test_mse, 1e-10);
}

TEST(Interpolation, CaseGridAndProvenance) {
  auto cfg = h::parse_config(small_config());
  const auto out = h::run_interpolation(cfg);
  EXPECT_EQ(out.results["cases"].size(), 2u * 2u * 1u);
  EXPECT_EQ(out.results["summary"].size(), 2u);
  EXPECT_EQ(out.results["config_hash"], cfg.hash);
  const auto& mse = out.files.at("mse.csv");
  EXPECT_EQ(line_count(mse), 1u + 2u * 2u * 3u);
  std::istringstream lines(mse);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("reservoir_seed,sampling_seed,config_hash", 0), 0u);
  while (std::getline(lines, line)) EXPECT_NE(line.find(cfg.hash), std::string::npos);
  EXPECT_TRUE(out.files.count("svals.csv"));
  EXPECT_TRUE(out.files.count("spectra.csv"));
}

TEST(Interpolation, Deterministic) {
  auto cfg = h::parse_config(small_config());
  cfg.threads = 1;
  const auto a = h::run_interpolation(cfg);
  cfg.threads = 3;
  const auto b = h::run_interpolation(cfg);
  EXPECT_EQ(a.results.dump(), b.results.dump());
  EXPECT_EQ(a.files, b.files);

  const auto da = scratch_dir("det_a"), db = scratch_dir("det_b");
  h::write_outputs(a, da);
  h::write_outputs(b, db);
  for (const auto& name : {"results.json", "mse.csv", "svals.csv", "spectra.csv"}) {
    std::ifstream fa(da / name, std::ios::binary), fb(db / name, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, sb) << name;
  }
}

TEST(Diagnostics, NormalisedSpectraAndIntensityBound) {
  auto doc = small_config();
  doc["exact"] = true;
  const auto out = h::run_diagnostics(h::parse_config(doc));
  for (const auto& c : out.results["cases"]) {
    EXPECT_NEAR(c["singular_value_sum"].get<double>(), 1.0, 1e-10);
    if (c["state"] == "intensity") {
      EXPECT_LE(c["numerical_rank"].get<int>(), 3);
      EXPECT_LE(c["conditioned_rank"].get<int>(), 3);
    }
  }
  EXPECT_TRUE(out.files.count("functions.csv"));
}

TEST(Classification, ConstantLabelsMatchMajority) {
  auto doc = small_config();
  doc["exact"] = true;
  doc["network"] = {{"ports", 3}, {"seeds", {1}}};
  auto cfg = h::parse_config(doc);
  auto data = h::gaussian_blobs(10, 8, 3.0, 1.0, 2);
  std::fill(data.labels.begin(), data.labels.end(), 0);
  const auto out = h::run_classification(cfg, data);
  for (const auto& c : out.results["cases"]) {
    EXPECT_EQ(c["test_mcc"].get<double>(), 0.0);
    EXPECT_EQ(c["test_accuracy"].get<double>(), out.results["majority"]["test_accuracy"].get<double>());
  }
  EXPECT_EQ(out.results["majority"]["test_mcc"].get<double>(), 0.0);
}

TEST(ShowNetwork, ListsEveryReservoir) {
  const auto cfg = h::parse_config(small_config());
  const auto out = h::show_networks(cfg);
  ASSERT_EQ(out.results["networks"].size(), 2u);
  for (const auto& n : out.results["networks"]) {
    EXPECT_LT(n["unitarity_error"].get<double>(), 1e-12);
    EXPECT_EQ(photonrc::network_from_json(n).port_count(), 3u);
  }
}
