#include "photonrc/harness/targets.hpp"

#include <cmath>
#include <stdexcept>

#include "photonrc/rng.hpp"
#include "photonrc/types.hpp"

namespace photonrc::harness {

double TargetFunction::operator()(double x) const {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.amplitude * std::cos(2.0 * kPi * t.frequency * x + t.phase);
  return sum;
}

std::vector<double> TargetFunction::evaluate(std::span<const double> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back((*this)(x));
  return out;
}

std::vector<TargetFunction> random_targets(std::size_t count, double bandwidth, std::size_t terms,
                                           std::uint64_t seed) {
  if (!(bandwidth >= 0.0)) throw std::invalid_argument("random_targets: negative bandwidth");
  Rng rng(seed);
  std::vector<TargetFunction> out(count);
  for (auto& f : out) {
    f.terms.resize(terms);
    for (auto& t : f.terms) {
      t.amplitude = rng.uniform();
      t.frequency = rng.uniform(0.0, bandwidth);
      t.phase = rng.uniform(0.0, 2.0 * kPi);
    }
  }
  return out;
}

}  // namespace photonrc::harness
