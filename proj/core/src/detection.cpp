#include "photonrc/detection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace photonrc {

void validate(const DetectorModel& detector) {
  if (!(detector.eta >= 0.0 && detector.eta <= 1.0)) {
    throw std::invalid_argument("detector: eta must lie in [0, 1]");
  }
  if (detector.max_photons < 0) throw std::invalid_argument("detector: negative max_photons");
  if (detector.n_samp == 0) throw std::invalid_argument("detector: n_samp must be positive");
  if (detector.dark_counts != 0.0) {
    throw std::invalid_argument("detector: dark counts are not simulated");
  }
}

namespace {

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double thinning(int n, int k, double eta) {
  return binomial(n, k) * std::pow(eta, k) * std::pow(1.0 - eta, n - k);
}

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
}

// Calls visit(kept, weight) for every componentwise k <= n with non-zero
// thinning weight and total(k) <= limit.
void for_each_thinned(const Occupation& n, double eta, int limit,
                      const std::function<void(const std::vector<int>&, double)>& visit) {
  std::vector<int> kept(n.size(), 0);
  std::function<void(std::size_t, int, double)> recurse = [&](std::size_t mode, int used, double w) {
    if (mode == n.size()) {
      visit(kept, w);
      return;
    }
    for (int k = 0; k <= n[mode] && used + k <= limit; ++k) {
      const double t = thinning(n[mode], k, eta);
      if (t == 0.0) continue;
      kept[mode] = k;
      recurse(mode + 1, used + k, w * t);
    }
    kept[mode] = 0;
  };
  recurse(0, 0, 1.0);
}

}  // namespace

OutputDistribution apply_loss(const OutputDistribution& dist, double eta) {
  check_eta(eta);
  OutputDistribution out(dist.mode_count());
  for (const auto& [occ, p] : dist.probabilities()) {
    for_each_thinned(occ, eta, occ.total(), [&](const std::vector<int>& kept, double w) {
      out.add(Occupation(kept), p * w);
    });
  }
  return out;
}

PostSelection postselect(const OutputDistribution& dist, int max_photons) {
  if (max_photons < 0) throw std::invalid_argument("postselect: negative max_photons");
  PostSelection sel{OutputDistribution(dist.mode_count()), 0.0};
  for (const auto& [occ, p] : dist.probabilities()) {
    if (occ.total() <= max_photons) sel.kept.add(occ, p);
  }
  sel.reject_probability = std::max(0.0, 1.0 - sel.kept.total());
  return sel;
}

SampledFeatures sample(const PostSelection& selection, std::uint64_t n_samp, std::uint64_t seed) {
  if (n_samp == 0) throw std::invalid_argument("sample: n_samp must be positive");
  const auto& probs = selection.kept.probabilities();
  std::vector<double> weights;
  weights.reserve(probs.size() + 1);
  for (const auto& [occ, p] : probs) weights.push_back(p);
  weights.push_back(selection.reject_probability);
  double remaining = 0.0;
  for (double w : weights) remaining += w;
  if (!(remaining > 0.0)) throw std::invalid_argument("sample: distribution has no mass");

  std::mt19937_64 engine(seed);
  std::vector<std::uint64_t> counts(weights.size(), 0);
  std::uint64_t left = n_samp;
  for (std::size_t i = 0; i + 1 < weights.size() && left > 0; ++i) {
    const double p = remaining > 0.0 ? std::clamp(weights[i] / remaining, 0.0, 1.0) : 0.0;
    if (p > 0.0) {
      std::binomial_distribution<std::uint64_t> draw(left, p);
      counts[i] = draw(engine);
      left -= counts[i];
    }
    remaining -= weights[i];
  }
  counts.back() = left;

  SampledFeatures out;
  out.seed = seed;
  const std::uint64_t rejected = counts.back();
  const std::uint64_t accepted = n_samp - rejected;
  out.rejected_fraction = static_cast<double>(rejected) / static_cast<double>(n_samp);
  out.empty = accepted == 0;
  std::size_t i = 0;
  for (const auto& [occ, p] : probs) {
    out.frequencies[occ] =
        out.empty ? 0.0 : static_cast<double>(counts[i]) / static_cast<double>(accepted);
    ++i;
  }
  return out;
}

LossyDetector::LossyDetector(const InputState& state, double eta, int max_photons)
    : modes_(state.mode_count()), max_photons_(max_photons) {
  check_eta(eta);
  if (max_photons < 0) throw std::invalid_argument("LossyDetector: negative max_photons");
  if (state.distinguishable()) {
    throw std::invalid_argument("LossyDetector: distinguishable photons are not supported");
  }
  if (modes_ % 2 != 0) throw std::invalid_argument("LossyDetector: odd mode count");

  // lost occupation -> kept occupation -> amplitude
  std::map<Occupation, std::map<Occupation, Complex>> grouped;
  for (const auto& c : state.components()) {
    const Occupation& n = c.occupation;
    for_each_thinned(n, eta, max_photons, [&](const std::vector<int>& kept, double w) {
      std::vector<int> lost(n.size());
      for (std::size_t i = 0; i < n.size(); ++i) lost[i] = n[i] - kept[i];
      grouped[Occupation(std::move(lost))][Occupation(kept)] += c.amplitude * std::sqrt(w);
    });
  }

  std::map<Occupation, std::size_t> input_index;
  for (const auto& [lost, terms] : grouped) {
    Branch branch(static_cast<std::size_t>(max_photons) + 1);
    for (const auto& [kept, amp] : terms) {
      auto [it, inserted] = input_index.try_emplace(kept, inputs_.size());
      if (inserted) inputs_.push_back(kept);
      branch[static_cast<std::size_t>(kept.total())].push_back({it->second, amp});
    }
    branches_.push_back(std::move(branch));
  }

  const std::size_t ports = modes_ / 2;
  port_basis_ = enumerate_up_to(ports, static_cast<std::size_t>(max_photons));
  std::map<Occupation, std::size_t> basis_index;
  for (std::size_t i = 0; i < port_basis_.size(); ++i) basis_index[port_basis_[i]] = i;
  for (int n = 0; n <= max_photons; ++n) {
    outputs_.push_back(enumerate_occupations(modes_, static_cast<std::size_t>(n)));
    std::vector<std::size_t> index;
    index.reserve(outputs_.back().size());
    for (const auto& o : outputs_.back()) index.push_back(basis_index.at(collapse_polarisation(o)));
    port_index_.push_back(std::move(index));
  }
}

Eigen::VectorXd LossyDetector::kept_probabilities(const CMatrix& unitary) const {
  if (static_cast<std::size_t>(unitary.rows()) != modes_) {
    throw std::invalid_argument("LossyDetector: unitary dimension mismatch");
  }
  std::vector<CVector> amplitudes;
  amplitudes.reserve(inputs_.size());
  for (const auto& in : inputs_) {
    amplitudes.push_back(transition_amplitudes(unitary, in, outputs_[static_cast<std::size_t>(in.total())]));
  }
  Eigen::VectorXd kept = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(port_basis_.size()));
  for (const auto& branch : branches_) {
    for (std::size_t n = 0; n < branch.size(); ++n) {
      if (branch[n].empty()) continue;
      CVector sum = CVector::Zero(static_cast<Eigen::Index>(outputs_[n].size()));
      for (const auto& term : branch[n]) sum += term.amplitude * amplitudes[term.input];
      for (Eigen::Index o = 0; o < sum.size(); ++o) {
        kept(static_cast<Eigen::Index>(port_index_[n][static_cast<std::size_t>(o)])) += std::norm(sum(o));
      }
    }
  }
  return kept;
}

PostSelection LossyDetector::detect(const CMatrix& unitary) const {
  const Eigen::VectorXd kept = kept_probabilities(unitary);
  PostSelection sel{OutputDistribution(modes_ / 2), 0.0};
  for (Eigen::Index i = 0; i < kept.size(); ++i) {
    if (kept(i) > 0.0) sel.kept.add(port_basis_[static_cast<std::size_t>(i)], kept(i));
  }
  sel.reject_probability = std::max(0.0, 1.0 - kept.sum());
  return sel;
}

namespace {

// Untruncated photon-number law of one port.
std::vector<double> port_number_distribution(const PortTemplate& port, double magnitude) {
  if (!port.coherent || magnitude == 0.0) {
    std::vector<double> point(static_cast<std::size_t>(port.n) + 1, 0.0);
    point.back() = 1.0;
    return point;
  }
  const double x = magnitude * magnitude;
  const int extra = 40 + static_cast<int>(std::ceil(x + 10.0 * std::sqrt(x)));
  const double log_l = std::log(laguerre(port.n, -x));
  std::vector<double> dist(static_cast<std::size_t>(port.n + extra) + 1, 0.0);
  for (int k = 0; k <= extra; ++k) {
    dist[static_cast<std::size_t>(port.n + k)] =
        std::exp(-x + k * std::log(x) - std::lgamma(k + 1.0) + std::log(binomial(port.n + k, port.n)) - log_l);
  }
  return dist;
}

}  // namespace

double postselected_mass(std::span<const PortTemplate> ports, double magnitude,
                         const DetectorModel& detector) {
  validate(detector);
  if (magnitude < 0.0) throw std::invalid_argument("postselected_mass: negative amplitude");
  std::vector<double> total{1.0};
  for (const auto& port : ports) {
    const auto dist = port_number_distribution(port, magnitude);
    std::vector<double> next(total.size() + dist.size() - 1, 0.0);
    for (std::size_t a = 0; a < total.size(); ++a) {
      for (std::size_t b = 0; b < dist.size(); ++b) next[a + b] += total[a] * dist[b];
    }
    total = std::move(next);
  }
  double mass = 0.0;
  for (std::size_t n = 0; n < total.size(); ++n) {
    const int photons = static_cast<int>(n);
    for (int k = 0; k <= std::min(photons, detector.max_photons); ++k) {
      mass += total[n] * thinning(photons, k, detector.eta);
    }
  }
  return mass;
}

std::vector<double> optimise_alpha(std::span<const PortTemplate> ports,
                                   const DetectorModel& detector) {
  const bool any_coherent = std::any_of(ports.begin(), ports.end(), [](const PortTemplate& p) { return p.coherent; });
  if (!any_coherent) return {};
  double best_alpha = 0.0;
  double best_mass = -1.0;
  for (int step = 0; step <= 300; ++step) {
    const double alpha = 0.01 * step;
    const double mass = postselected_mass(ports, alpha, detector);
    if (mass > best_mass) {
      best_mass = mass;
      best_alpha = alpha;
    }
  }
  std::vector<double> out(ports.size(), 0.0);
  for (std::size_t m = 0; m < ports.size(); ++m) {
    if (ports[m].coherent) out[m] = best_alpha;
  }
  return out;
}

}  // namespace photonrc
