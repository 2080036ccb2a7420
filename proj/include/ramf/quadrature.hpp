#pragma once

#include <functional>
#include <vector>

#include "ramf/common.hpp"

namespace ramf {

struct GaussRule {
    std::vector<double> x, w;
};

// n-point Gauss-Legendre rule on [-1, 1].
const GaussRule& gauss_legendre(int n);

struct QuadResult {
    cplx value;
    double error;
    int panels;
};

// 32-point Gauss-Legendre with dyadic refinement until successive estimates
// differ by less than tol or max_levels is reached.
QuadResult integrate(const std::function<cplx(double)>& f, double a, double b, double tol, int max_levels = 14);

}  // namespace ramf
