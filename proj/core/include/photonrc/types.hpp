#pragma once

#include <complex>

#include <Eigen/Dense>

namespace photonrc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Global mode index of a port's polarisation modes; ordering is [1_H, 1_V, 2_H, 2_V, ...].
constexpr std::size_t h_mode(std::size_t port) { return 2 * port; }
constexpr std::size_t v_mode(std::size_t port) { return 2 * port + 1; }

// max_ij |(U^dagger U - I)_ij|
double unitarity_error(const CMatrix& u);

}  // namespace photonrc
