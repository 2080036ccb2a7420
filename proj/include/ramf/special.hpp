#pragma once

#include "ramf/common.hpp"

namespace ramf {

// Riemann zeta at an integer m >= 2.
double zeta_int(int m);

double factorial(int n);

// sigma_k(n) = sum_{d | n} d^k for integer k (may be negative).
double divisor_sigma(i64 n, int k);

}  // namespace ramf
