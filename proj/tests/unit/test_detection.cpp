#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "photonrc/detection.hpp"
#include "photonrc/network.hpp"
#include "photonrc/rng.hpp"

using photonrc::CMatrix;
using photonrc::Occupation;
using photonrc::OutputDistribution;
using photonrc::PortStateSpec;

namespace {

OutputDistribution random_distribution(std::size_t modes, std::size_t max_photons, std::uint64_t seed) {
  photonrc::Rng rng(seed);
  OutputDistribution d(modes);
  const auto basis = photonrc::enumerate_up_to(modes, max_photons);
  std::vector<double> w(basis.size());
  for (auto& v : w) v = rng.uniform();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) d.add(basis[i], w[i] / total);
  return d;
}

double max_abs_difference(const OutputDistribution& a, const OutputDistribution& b) {
  double worst = 0.0;
  for (const auto& [occ, p] : a.probabilities()) worst = std::max(worst, std::abs(p - b.probability(occ)));
  for (const auto& [occ, p] : b.probabilities()) worst = std::max(worst, std::abs(p - a.probability(occ)));
  return worst;
}

// Kept outcomes of a 5-port distribution over the 70 four-photon states plus a reject share.
photonrc::PostSelection seventy_outcomes(std::uint64_t seed, double reject) {
  photonrc::Rng rng(seed);
  photonrc::PostSelection sel;
  sel.kept = OutputDistribution(5);
  const auto basis = photonrc::enumerate_occupations(5, 4);
  std::vector<double> w(basis.size());
  for (auto& v : w) v = 0.2 + rng.uniform();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) sel.kept.add(basis[i], (1.0 - reject) * w[i] / total);
  sel.reject_probability = reject;
  return sel;
}

double poisson_cdf(double mean, int k) {
  double term = std::exp(-mean), sum = term;
  for (int j = 1; j <= k; ++j) {
    term *= mean / j;
    sum += term;
  }
  return sum;
}

}  // namespace

TEST(Loss, BinomialTwoPhotons) {
  OutputDistribution d(1);
  d.add({2}, 1.0);
  const auto out = photonrc::apply_loss(d, 0.9);
  EXPECT_NEAR(out.probability({2}), 0.81, 1e-15);
  EXPECT_NEAR(out.probability({1}), 0.18, 1e-15);
  EXPECT_NEAR(out.probability({0}), 0.01, 1e-15);
}

TEST(Loss, IdentityAndVacuum) {
  const auto d = random_distribution(3, 3, 1);
  EXPECT_LT(max_abs_difference(photonrc::apply_loss(d, 1.0), d), 1e-15);
  const auto vac = photonrc::apply_loss(d, 0.0);
  EXPECT_NEAR(vac.probability(Occupation::vacuum(3)), 1.0, 1e-12);
  EXPECT_EQ(vac.probabilities().size(), 1u);
}

TEST(Loss, PreservesTotal) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d = random_distribution(4, 4, seed);
    EXPECT_NEAR(photonrc::apply_loss(d, 0.37).total(), d.total(), 1e-12);
  }
}

TEST(Loss, Semigroup) {
  photonrc::Rng rng(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d = random_distribution(3, 4, 100 + seed);
    const double a = rng.uniform(), b = rng.uniform();
    const auto twice = photonrc::apply_loss(photonrc::apply_loss(d, a), b);
    EXPECT_LT(max_abs_difference(twice, photonrc::apply_loss(d, a * b)), 1e-10);
  }
}

TEST(Loss, EtaOutOfRange) {
  const auto d = random_distribution(2, 2, 3);
  EXPECT_THROW(photonrc::apply_loss(d, 1.5), std::invalid_argument);
  EXPECT_THROW(photonrc::apply_loss(d, -0.1), std::invalid_argument);
}

TEST(Postselect, KeepsLowSectors) {
  const auto d = random_distribution(3, 4, 4);
  const auto all = photonrc::postselect(d, 4);
  EXPECT_NEAR(all.reject_probability, 0.0, 1e-12);

  const auto vac = photonrc::postselect(d, 0);
  EXPECT_EQ(vac.kept.probabilities().size(), 1u);
  EXPECT_DOUBLE_EQ(vac.kept.probability(Occupation::vacuum(3)), d.probability(Occupation::vacuum(3)));

  const auto some = photonrc::postselect(d, 2);
  for (const auto& [occ, p] : some.kept.probabilities()) EXPECT_LE(occ.total(), 2);
  EXPECT_NEAR(some.kept.total() + some.reject_probability, 1.0, 1e-10);
}

TEST(Postselect, TruncationMassIsRejected) {
  OutputDistribution d(2);
  d.add({1, 0}, 0.6);
  d.add({0, 1}, 0.3);
  const auto sel = photonrc::postselect(d, 4);
  EXPECT_NEAR(sel.reject_probability, 0.1, 1e-15);
}

TEST(Postselect, FockReferenceHasNoReject) {
  std::vector<PortStateSpec> specs(5);
  for (int m = 0; m < 4; ++m) specs[static_cast<std::size_t>(m)].n = 1;
  const auto state = photonrc::build_input_state(specs);
  const auto net = photonrc::random_reservoir(5, 123);
  const auto traced = photonrc::trace_polarisation(photonrc::propagate(state, net.unitary()));
  const auto sel = photonrc::postselect(photonrc::apply_loss(traced, 0.9), 4);
  EXPECT_NEAR(sel.reject_probability, 0.0, 1e-10);
  EXPECT_NEAR(sel.kept.total() + sel.reject_probability, 1.0, 1e-10);
}

TEST(Sample, PointMass) {
  photonrc::PostSelection sel;
  sel.kept = OutputDistribution(2);
  sel.kept.add({1, 1}, 1.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = photonrc::sample(sel, 1000, seed);
    ASSERT_EQ(s.frequencies.size(), 1u);
    EXPECT_EQ(s.frequencies.begin()->second, 1.0);
    EXPECT_EQ(s.rejected_fraction, 0.0);
    EXPECT_FALSE(s.empty);
  }
}

TEST(Sample, Deterministic) {
  const auto sel = seventy_outcomes(1, 0.2);
  const auto a = photonrc::sample(sel, 10000, 42);
  const auto b = photonrc::sample(sel, 10000, 42);
  const auto c = photonrc::sample(sel, 10000, 43);
  EXPECT_EQ(a.frequencies, b.frequencies);
  EXPECT_EQ(a.rejected_fraction, b.rejected_fraction);
  EXPECT_NE(a.frequencies, c.frequencies);
}

TEST(Sample, FrequenciesRenormalised) {
  const auto sel = seventy_outcomes(2, 0.3);
  const auto s = photonrc::sample(sel, 5000, 9);
  double total = 0.0;
  for (const auto& [occ, f] : s.frequencies) total += f;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_GT(s.rejected_fraction, 0.2);
  EXPECT_LT(s.rejected_fraction, 0.4);
}

TEST(Sample, AllRejectedFlagged) {
  photonrc::PostSelection sel;
  sel.kept = OutputDistribution(2);
  sel.kept.add({1, 0}, 1e-300);
  sel.reject_probability = 1.0;
  const auto s = photonrc::sample(sel, 10, 1);
  EXPECT_TRUE(s.empty);
  EXPECT_EQ(s.rejected_fraction, 1.0);
  EXPECT_THROW(photonrc::sample(sel, 0, 1), std::invalid_argument);
}

TEST(Sample, ConvergesInTotalVariation) {
  const auto sel = seventy_outcomes(3, 0.1);
  const double kept = sel.kept.total();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = photonrc::sample(sel, 1000000, seed);
    double tv = 0.0;
    for (const auto& [occ, p] : sel.kept.probabilities()) {
      const auto it = s.frequencies.find(occ);
      tv += std::abs((it == s.frequencies.end() ? 0.0 : it->second) - p / kept);
    }
    EXPECT_LT(0.5 * tv, 5e-3) << seed;
  }
}

TEST(Sample, UnbiasedOverSeeds) {
  const auto sel = seventy_outcomes(4, 0.25);
  const double kept = sel.kept.total();
  constexpr int kSeeds = 100;
  std::map<Occupation, std::vector<double>> draws;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const auto s = photonrc::sample(sel, 20000, 1000 + static_cast<std::uint64_t>(seed));
    for (const auto& [occ, p] : sel.kept.probabilities()) {
      const auto it = s.frequencies.find(occ);
      draws[occ].push_back(it == s.frequencies.end() ? 0.0 : it->second);
    }
  }
  for (const auto& [occ, p] : sel.kept.probabilities()) {
    const auto& v = draws.at(occ);
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / kSeeds;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / (kSeeds - 1) / kSeeds);
    EXPECT_LE(std::abs(mean - p / kept), 3.0 * se) << occ.label();
  }
}

TEST(LossyDetector, MatchesPropagateTraceLossPostselect) {
  std::vector<std::vector<PortStateSpec>> cases;
  {
    std::vector<PortStateSpec> fock(5);
    for (int m = 0; m < 4; ++m) fock[static_cast<std::size_t>(m)].n = 1;
    cases.push_back(fock);
    std::vector<PortStateSpec> hybrid(5);
    hybrid[0] = {1, 0.5};
    hybrid[1] = {1, 0.5};
    cases.push_back(hybrid);
    std::vector<PortStateSpec> coherent(5);
    coherent[0].alpha = 0.5;
    coherent[1].alpha = photonrc::Complex(0.1, 0.45);
    coherent[2].alpha = 0.6;
    coherent[2].polarisation = photonrc::PolarisationState{0.3, 0.9};
    cases.push_back(coherent);
  }
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto state = photonrc::build_input_state(cases[c]);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const CMatrix u = photonrc::random_reservoir(5, 10 * c + seed).unitary();
      const auto traced = photonrc::trace_polarisation(photonrc::propagate(state, u));
      for (double eta : {1.0, 0.9, 0.4}) {
        const auto lossy = photonrc::apply_loss(traced, eta);
        for (int max_photons : {0, 2, 4}) {
          const photonrc::LossyDetector detector(state, eta, max_photons);
          const auto reference = photonrc::postselect(lossy, max_photons);
          const auto got = detector.detect(u);
          EXPECT_LT(max_abs_difference(got.kept, reference.kept), 1e-10);
          EXPECT_NEAR(got.reject_probability, reference.reject_probability, 1e-10);
          const Eigen::VectorXd kept = detector.kept_probabilities(u);
          ASSERT_EQ(static_cast<std::size_t>(kept.size()), detector.port_basis().size());
          for (std::size_t i = 0; i < detector.port_basis().size(); ++i) {
            EXPECT_NEAR(kept(static_cast<Eigen::Index>(i)),
                        reference.kept.probability(detector.port_basis()[i]), 1e-10);
          }
        }
      }
    }
  }
}

TEST(LossyDetector, Errors) {
  const auto state = photonrc::InputState(2, {{1.0, Occupation{1, 0}}}, true);
  EXPECT_THROW(photonrc::LossyDetector(state, 0.9, 4), std::invalid_argument);
  const auto odd = photonrc::InputState(3, {{1.0, Occupation{1, 0, 0}}}, false);
  EXPECT_THROW(photonrc::LossyDetector(odd, 0.9, 4), std::invalid_argument);
  const auto ok = photonrc::InputState(2, {{1.0, Occupation{1, 0}}}, false);
  EXPECT_THROW(photonrc::LossyDetector(ok, 1.2, 4), std::invalid_argument);
}

TEST(DetectorModel, Validation) {
  EXPECT_NO_THROW(photonrc::validate({0.9, 4, 100, 0.0}));
  EXPECT_THROW(photonrc::validate({1.1, 4, 100, 0.0}), std::invalid_argument);
  EXPECT_THROW(photonrc::validate({0.9, -1, 100, 0.0}), std::invalid_argument);
  EXPECT_THROW(photonrc::validate({0.9, 4, 0, 0.0}), std::invalid_argument);
  EXPECT_THROW(photonrc::validate({0.9, 4, 100, 1e-6}), std::invalid_argument);
}

TEST(OptimiseAlpha, VacuumThreshold) {
  const photonrc::PortTemplate ports[] = {{0, true}, {1, false}};
  const auto alpha = photonrc::optimise_alpha(ports, {0.9, 0, 100, 0.0});
  ASSERT_EQ(alpha.size(), 2u);
  EXPECT_EQ(alpha[0], 0.0);
  EXPECT_EQ(alpha[1], 0.0);
}

TEST(OptimiseAlpha, FockTemplateIsEmpty) {
  const photonrc::PortTemplate ports[] = {{1, false}, {1, false}};
  EXPECT_TRUE(photonrc::optimise_alpha(ports, {0.9, 4, 100, 0.0}).empty());
}

TEST(OptimiseAlpha, TwoCoherentPortsMatchPoissonMass) {
  // Two coherent ports carry Poisson(2|a|^2) photons; loss thins it to Poisson(2 eta |a|^2).
  const photonrc::PortTemplate ports[] = {{0, true}, {0, true}, {0, false}};
  const photonrc::DetectorModel detector{0.9, 4, 100, 0.0};
  double best_mass = -1.0, best_alpha = -1.0;
  for (int step = 0; step <= 300; ++step) {
    const double a = 0.01 * step;
    const double want = poisson_cdf(2.0 * 0.9 * a * a, 4);
    EXPECT_NEAR(photonrc::postselected_mass(ports, a, detector), want, 1e-10) << a;
    if (want > best_mass) {
      best_mass = want;
      best_alpha = a;
    }
  }
  const auto alpha = photonrc::optimise_alpha(ports, detector);
  EXPECT_EQ(alpha[0], best_alpha);
  EXPECT_EQ(alpha[1], best_alpha);
  EXPECT_EQ(alpha[2], 0.0);
}

TEST(OptimiseAlpha, FockPortsThinBinomially) {
  const photonrc::PortTemplate ports[] = {{2, false}, {3, false}};
  const photonrc::DetectorModel detector{0.7, 3, 100, 0.0};
  // Five photons, at most three survive.
  double want = 0.0;
  for (int k = 0; k <= 3; ++k) {
    want += std::tgamma(6.0) / (std::tgamma(k + 1.0) * std::tgamma(6.0 - k)) * std::pow(0.7, k) *
            std::pow(0.3, 5 - k);
  }
  EXPECT_NEAR(photonrc::postselected_mass(ports, 0.0, detector), want, 1e-12);
}
