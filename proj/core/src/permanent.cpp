#include "photonrc/permanent.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace photonrc {

Complex permanent(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("permanent: matrix is not square");
  const Eigen::Index n = a.rows();
  if (n == 0) return {1.0, 0.0};
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0);
  if (n > 62) throw std::invalid_argument("permanent: matrix too large");

  // Glynn: perm(A) = 2^{1-n} sum_{delta, delta_0 = +1} (prod delta) prod_j sum_i delta_i a_ij.
  // Row 0 keeps delta = +1; rows 1..n-1 flip in Gray-code order.
  std::vector<Complex> col_sums(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) col_sums[j] = a.col(j).sum();

  auto product = [&] {
    Complex p = col_sums[0];
    for (Eigen::Index j = 1; j < n; ++j) p *= col_sums[j];
    return p;
  };

  Complex total = product();
  double sign = 1.0;
  std::uint64_t delta_negative = 0;  // bit r-1 set when delta_r == -1
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t k = 1; k < steps; ++k) {
    const int bit = std::countr_zero(k);
    const Eigen::Index row = bit + 1;
    delta_negative ^= std::uint64_t{1} << bit;
    const double step = (delta_negative >> bit) & 1U ? -2.0 : 2.0;
    for (Eigen::Index j = 0; j < n; ++j) col_sums[j] += step * a(row, j);
    sign = -sign;
    total += sign * product();
  }
  return total / static_cast<double>(steps);
}

Complex permanent_ryser(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("permanent_ryser: matrix is not square");
  const Eigen::Index n = a.rows();
  if (n == 0) return {1.0, 0.0};
  if (n > 62) throw std::invalid_argument("permanent_ryser: matrix too large");
  Complex total{0.0, 0.0};
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t s = 1; s < subsets; ++s) {
    Complex prod{1.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex row_sum{0.0, 0.0};
      for (Eigen::Index j = 0; j < n; ++j) {
        if ((s >> j) & 1U) row_sum += a(i, j);
      }
      prod *= row_sum;
    }
    const int size = std::popcount(s);
    total += ((n - size) % 2 == 0 ? 1.0 : -1.0) * prod;
  }
  return total;
}

}  // namespace photonrc
