#pragma once

#include "photonrc/types.hpp"

namespace photonrc {

/// Permanent of a square complex matrix via Glynn's formula with Gray-code
/// ordering of the sign vectors, O(2^(n-1) n). The 0x0 permanent is 1.
Complex permanent(const CMatrix& a);

/// Ryser's inclusion-exclusion formula, O(2^n n^2). Slower; kept for
/// benchmarking and as a second route in tests.
Complex permanent_ryser(const CMatrix& a);

}  // namespace photonrc
