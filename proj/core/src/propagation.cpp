#include "photonrc/propagation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "photonrc/permanent.hpp"

namespace photonrc {

InputState::InputState(std::size_t modes, std::vector<StateComponent> components,
                       bool distinguishable)
    : modes_(modes), components_(std::move(components)), distinguishable_(distinguishable) {
  for (const auto& c : components_) {
    if (c.occupation.size() != modes_) {
      throw std::invalid_argument("InputState: component mode count mismatch");
    }
  }
}

double InputState::norm_squared() const {
  double total = 0.0;
  for (const auto& c : components_) total += std::norm(c.amplitude);
  return total;
}

int InputState::max_photons() const {
  int best = 0;
  for (const auto& c : components_) best = std::max(best, c.occupation.total());
  return best;
}

double laguerre(int n, double x) {
  if (n < 0) throw std::invalid_argument("laguerre: negative degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// Highest displacement order kept. Terms |alpha|^k / k! of the creation
// operator series are unimodal in k.
int truncation_order(double magnitude, const Truncation& truncation) {
  if (truncation.mode == Truncation::Mode::FixedOrder) {
    if (truncation.order < 0) throw std::invalid_argument("Truncation: negative order");
    return truncation.order;
  }
  if (!(truncation.relative_cutoff > 0.0 && truncation.relative_cutoff < 1.0)) {
    throw std::invalid_argument("Truncation: relative cutoff must lie in (0, 1)");
  }
  const int peak_k = static_cast<int>(std::floor(magnitude));
  const double log_peak = peak_k * std::log(magnitude) - std::lgamma(peak_k + 1.0);
  const double log_floor = log_peak + std::log(truncation.relative_cutoff);
  int k = peak_k;
  while (true) {
    const double next = (k + 1) * std::log(magnitude) - std::lgamma(k + 2.0);
    if (next < log_floor) return k;
    ++k;
  }
}

}  // namespace

std::vector<Complex> port_amplitudes(int added, Complex alpha, const Truncation& truncation) {
  if (added < 0) throw std::invalid_argument("port_amplitudes: negative photon number");
  const double magnitude = std::abs(alpha);
  if (magnitude == 0.0) {
    std::vector<Complex> out(static_cast<std::size_t>(added) + 1, Complex{});
    out.back() = 1.0;
    return out;
  }
  const double x = magnitude * magnitude;
  const int order = truncation_order(magnitude, truncation);
  const double log_norm = -0.5 * x - 0.5 * std::lgamma(added + 1.0) - 0.5 * std::log(laguerre(added, -x));
  const double arg = std::arg(alpha);
  std::vector<Complex> out(static_cast<std::size_t>(added + order) + 1, Complex{});
  for (int k = 0; k <= order; ++k) {
    const double log_mag = log_norm + k * std::log(magnitude) + 0.5 * std::lgamma(k + added + 1.0) -
                           std::lgamma(k + 1.0);
    out[static_cast<std::size_t>(k + added)] = std::polar(std::exp(log_mag), k * arg);
  }
  return out;
}

namespace {

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

Complex int_power(Complex base, int exponent) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

struct Partial {
  Complex amplitude;
  std::vector<int> counts;
};

}  // namespace

InputState build_input_state(std::span<const PortStateSpec> specs, const Truncation& truncation) {
  if (specs.empty()) throw std::invalid_argument("build_input_state: no ports");
  std::size_t distinguishable_ports = 0;
  for (const auto& s : specs) {
    if (s.n < 0) throw std::invalid_argument("build_input_state: negative photon number");
    if (s.distinguishable) {
      ++distinguishable_ports;
      if (s.alpha != Complex{}) {
        throw std::invalid_argument("build_input_state: distinguishable port with coherent amplitude");
      }
      if (s.polarisation) {
        throw std::invalid_argument("build_input_state: distinguishable photons must enter horizontally");
      }
    }
  }
  const bool distinguishable = distinguishable_ports > 0;
  if (distinguishable && distinguishable_ports != specs.size()) {
    // Vacuum ports carry no photons, so they may be marked either way.
    for (const auto& s : specs) {
      if (!s.distinguishable && (s.n != 0 || s.alpha != Complex{})) {
        throw std::invalid_argument(
            "build_input_state: cannot mix distinguishable and indistinguishable ports");
      }
    }
  }

  const std::size_t modes = 2 * specs.size();
  std::vector<Partial> partials{{Complex{1.0, 0.0}, std::vector<int>(modes, 0)}};
  for (std::size_t m = 0; m < specs.size(); ++m) {
    const auto& spec = specs[m];
    const std::vector<Complex> amps = port_amplitudes(spec.n, spec.alpha, truncation);
    const Complex ch = spec.polarisation ? spec.polarisation->h() : Complex{1.0, 0.0};
    const Complex cv = spec.polarisation ? spec.polarisation->v() : Complex{0.0, 0.0};

    // Local expansion of the port: (amplitude, n_H, n_V).
    std::vector<std::tuple<Complex, int, int>> local;
    for (std::size_t j = 0; j < amps.size(); ++j) {
      if (amps[j] == Complex{}) continue;
      const int photons = static_cast<int>(j);
      for (int r = photons; r >= 0; --r) {
        const Complex coeff = std::sqrt(binomial(photons, r)) * int_power(ch, r) * int_power(cv, photons - r);
        if (coeff == Complex{}) continue;
        local.emplace_back(amps[j] * coeff, r, photons - r);
      }
    }
    std::vector<Partial> next;
    next.reserve(partials.size() * local.size());
    for (const auto& p : partials) {
      for (const auto& [amp, nh, nv] : local) {
        Partial q{p.amplitude * amp, p.counts};
        q.counts[h_mode(m)] = nh;
        q.counts[v_mode(m)] = nv;
        next.push_back(std::move(q));
      }
    }
    partials = std::move(next);
  }

  std::vector<StateComponent> components;
  components.reserve(partials.size());
  for (auto& p : partials) components.push_back({p.amplitude, Occupation(std::move(p.counts))});
  return InputState(modes, std::move(components), distinguishable);
}

namespace {

std::vector<Eigen::Index> expand_modes(const Occupation& occ) {
  std::vector<Eigen::Index> modes;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    for (int c = 0; c < occ[i]; ++c) modes.push_back(static_cast<Eigen::Index>(i));
  }
  return modes;
}

double factorial_product(const Occupation& occ) {
  double prod = 1.0;
  for (int c : occ.counts()) prod *= std::tgamma(c + 1.0);
  return prod;
}

}  // namespace

Complex fock_amplitude(const CMatrix& unitary, const Occupation& input, const Occupation& output) {
  const Occupation outputs[] = {output};
  return transition_amplitudes(unitary, input, outputs)(0);
}

CVector transition_amplitudes(const CMatrix& unitary, const Occupation& input,
                              std::span<const Occupation> outputs) {
  if (unitary.rows() != unitary.cols() ||
      static_cast<std::size_t>(unitary.rows()) != input.size()) {
    throw std::invalid_argument("transition_amplitudes: unitary does not match mode count");
  }
  const auto in_modes = expand_modes(input);
  const auto n = static_cast<Eigen::Index>(in_modes.size());
  CMatrix cols(unitary.rows(), n);
  for (Eigen::Index c = 0; c < n; ++c) cols.col(c) = unitary.col(in_modes[c]);
  const double in_norm = factorial_product(input);

  CVector out(static_cast<Eigen::Index>(outputs.size()));
  CMatrix sub(n, n);
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    const Occupation& o = outputs[k];
    if (o.size() != input.size() || o.total() != input.total()) {
      throw std::invalid_argument("transition_amplitudes: photon number mismatch between " +
                                  input.label() + " and " + o.label());
    }
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < o.size(); ++i) {
      for (int c = 0; c < o[i]; ++c) sub.row(r++) = cols.row(static_cast<Eigen::Index>(i));
    }
    out(static_cast<Eigen::Index>(k)) = permanent(sub) / std::sqrt(in_norm * factorial_product(o));
  }
  return out;
}

void OutputDistribution::add(const Occupation& occ, double p) {
  if (modes_ == 0) modes_ = occ.size();
  if (occ.size() != modes_) throw std::invalid_argument("OutputDistribution: mode count mismatch");
  if (p < 0.0) throw std::invalid_argument("OutputDistribution: negative probability");
  probs_[occ] += p;
}

double OutputDistribution::probability(const Occupation& occ) const {
  const auto it = probs_.find(occ);
  return it == probs_.end() ? 0.0 : it->second;
}

double OutputDistribution::total() const {
  double sum = 0.0;
  for (const auto& [occ, p] : probs_) sum += p;
  return sum;
}

std::map<int, double> OutputDistribution::sector_totals() const {
  std::map<int, double> sectors;
  for (const auto& [occ, p] : probs_) sectors[occ.total()] += p;
  return sectors;
}

OutputDistribution propagate(const InputState& state, const CMatrix& unitary) {
  if (state.distinguishable()) {
    throw std::invalid_argument("propagate: use propagate_distinguishable for distinguishable photons");
  }
  if (static_cast<std::size_t>(unitary.rows()) != state.mode_count()) {
    throw std::invalid_argument("propagate: unitary dimension does not match the state");
  }
  std::map<int, std::vector<const StateComponent*>> sectors;
  for (const auto& c : state.components()) sectors[c.occupation.total()].push_back(&c);

  OutputDistribution dist(state.mode_count());
  for (const auto& [photons, comps] : sectors) {
    const auto outputs = enumerate_occupations(state.mode_count(), static_cast<std::size_t>(photons));
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(outputs.size()));
    for (const StateComponent* c : comps) {
      amps += c->amplitude * transition_amplitudes(unitary, c->occupation, outputs);
    }
    for (std::size_t k = 0; k < outputs.size(); ++k) {
      const double p = std::norm(amps(static_cast<Eigen::Index>(k)));
      if (p > 0.0) dist.add(outputs[k], p);
    }
  }
  return dist;
}

OutputDistribution propagate_distinguishable(const Occupation& photons, const CMatrix& unitary) {
  const auto modes = photons.size();
  if (static_cast<std::size_t>(unitary.rows()) != modes || unitary.rows() != unitary.cols()) {
    throw std::invalid_argument("propagate_distinguishable: unitary dimension mismatch");
  }
  std::map<std::vector<int>, double> current{{std::vector<int>(modes, 0), 1.0}};
  for (std::size_t src = 0; src < modes; ++src) {
    for (int photon = 0; photon < photons[src]; ++photon) {
      std::map<std::vector<int>, double> next;
      for (const auto& [counts, p] : current) {
        for (std::size_t j = 0; j < modes; ++j) {
          const double q = std::norm(unitary(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(src)));
          if (q == 0.0) continue;
          auto moved = counts;
          ++moved[j];
          next[moved] += p * q;
        }
      }
      current = std::move(next);
    }
  }
  OutputDistribution dist(modes);
  for (const auto& [counts, p] : current) {
    if (p > 0.0) dist.add(Occupation(counts), p);
  }
  return dist;
}

OutputDistribution trace_polarisation(const OutputDistribution& dist) {
  OutputDistribution out(dist.mode_count() / 2);
  for (const auto& [occ, p] : dist.probabilities()) out.add(collapse_polarisation(occ), p);
  return out;
}

std::vector<double> intensity_expectation(std::span<const PortStateSpec> specs,
                                          const CMatrix& unitary) {
  const auto modes = static_cast<Eigen::Index>(2 * specs.size());
  if (unitary.rows() != modes) {
    throw std::invalid_argument("intensity_expectation: unitary dimension mismatch");
  }
  CVector field = CVector::Zero(modes);
  for (std::size_t m = 0; m < specs.size(); ++m) {
    if (specs[m].n != 0) {
      throw std::invalid_argument("intensity_expectation: port " + std::to_string(m) +
                                  " carries Fock photons");
    }
    const Complex ch = specs[m].polarisation ? specs[m].polarisation->h() : Complex{1.0, 0.0};
    const Complex cv = specs[m].polarisation ? specs[m].polarisation->v() : Complex{0.0, 0.0};
    field(static_cast<Eigen::Index>(h_mode(m))) = specs[m].alpha * ch;
    field(static_cast<Eigen::Index>(v_mode(m))) = specs[m].alpha * cv;
  }
  const CVector out = unitary * field;
  std::vector<double> intensities(specs.size());
  for (std::size_t m = 0; m < specs.size(); ++m) {
    intensities[m] = std::norm(out(static_cast<Eigen::Index>(h_mode(m)))) +
                     std::norm(out(static_cast<Eigen::Index>(v_mode(m))));
  }
  return intensities;
}

}  // namespace photonrc
