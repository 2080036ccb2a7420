#include "ramf/special.hpp"

#include <cmath>

#include "ramf/arithmetic.hpp"

namespace ramf {

double zeta_int(int m) {
    if (m < 2) throw InvalidArgument("zeta_int: argument must be >= 2");
    // direct sum to K-1, then Euler-Maclaurin tail from K
    const int K = 20;
    static const double B2k[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
    long double s = 0;
    for (int n = K - 1; n >= 1; --n) s += std::pow(static_cast<long double>(n), -m);
    long double Kl = K;
    s += std::pow(Kl, 1 - m) / (m - 1) + 0.5L * std::pow(Kl, -m);
    long double rising = m;  // m (m+1) ... (m+2k-2)
    long double fact = 2;    // (2k)!
    for (int k = 1; k <= 7; ++k) {
        s += B2k[k - 1] / fact * rising * std::pow(Kl, -m - 2 * k + 1);
        rising *= static_cast<long double>(m + 2 * k - 1) * (m + 2 * k);
        fact *= static_cast<long double>(2 * k + 1) * (2 * k + 2);
    }
    return static_cast<double>(s);
}

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double divisor_sigma(i64 n, int k) {
    double s = 0;
    for (i64 d : divisors(n)) s += std::pow(static_cast<double>(d), k);
    return s;
}

}  // namespace ramf
