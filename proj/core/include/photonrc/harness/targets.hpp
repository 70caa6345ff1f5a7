#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace photonrc::harness {

struct SinusoidTerm {
  double amplitude = 0.0;
  double frequency = 0.0;  // cycles per unit x
  double phase = 0.0;
};

/// f(x) = sum_k a_k cos(2 pi f_k x + phi_k) on [0, 1].
struct TargetFunction {
  std::vector<SinusoidTerm> terms;

  double operator()(double x) const;
  std::vector<double> evaluate(std::span<const double> xs) const;
};

/// Amplitudes uniform on [0, 1], phases on [0, 2 pi), frequencies on [0, bandwidth].
std::vector<TargetFunction> random_targets(std::size_t count, double bandwidth,
                                           std::size_t terms, std::uint64_t seed);

}  // namespace photonrc::harness
