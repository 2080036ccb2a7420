#include "ramf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace ramf {

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule r;
    r.x.resize(static_cast<std::size_t>(n));
    r.w.resize(static_cast<std::size_t>(n));
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p1 = 1, p2 = 0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-16) break;
        }
        r.x[static_cast<std::size_t>(i)] = -z;
        r.x[static_cast<std::size_t>(n - 1 - i)] = z;
        r.w[static_cast<std::size_t>(i)] = 2 / ((1 - z * z) * pp * pp);
        r.w[static_cast<std::size_t>(n - 1 - i)] = r.w[static_cast<std::size_t>(i)];
    }
    return cache.emplace(n, std::move(r)).first->second;
}

namespace {

cplx panel(const std::function<cplx(double)>& f, double a, double b, const GaussRule& g) {
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    cplx s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(c + h * g.x[i]);
    return s * h;
}

QuadResult refine(const std::function<cplx(double)>& f, double a, double b, cplx whole, double tol, int level,
                  int max_levels, const GaussRule& g) {
    double m = 0.5 * (a + b);
    cplx left = panel(f, a, m, g), right = panel(f, m, b, g);
    double diff = std::abs(left + right - whole);
    if (diff < tol || level >= max_levels) return {left + right, diff, 2};
    QuadResult l = refine(f, a, m, left, 0.5 * tol, level + 1, max_levels, g);
    QuadResult r = refine(f, m, b, right, 0.5 * tol, level + 1, max_levels, g);
    return {l.value + r.value, l.error + r.error, l.panels + r.panels};
}

}  // namespace

QuadResult integrate(const std::function<cplx(double)>& f, double a, double b, double tol, int max_levels) {
    if (b == a) return {0.0, 0.0, 0};
    const GaussRule& g = gauss_legendre(32);
    cplx whole = panel(f, a, b, g);
    return refine(f, a, b, whole, tol, 1, max_levels, g);
}

}  // namespace ramf
