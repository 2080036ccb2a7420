#include "ramf/lseries.hpp"

#include <cmath>
#include <limits>

#include "ramf/quadrature.hpp"
#include "ramf/special.hpp"

namespace ramf {

namespace {

// int_0^h t^j e^{-s t} dt by its power series; used when |s| h is small.
cplx small_moment(int j, cplx s, double h) {
    cplx sum = 0.0, term = std::pow(h, j + 1);
    for (int m = 0; m < 200; ++m) {
        cplx add = term / static_cast<double>(j + m + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        term *= -s * h / static_cast<double>(m + 1);
    }
    return sum;
}

// int_a^b y^q e^{-s y} dy for q >= 0.
cplx power_exp_integral(int q, cplx s, double a, double b) {
    if (s == cplx(0.0)) return (std::pow(b, q + 1) - std::pow(a, q + 1)) / static_cast<double>(q + 1);
    double h = b - a;
    if (std::abs(s) * h <= 2) {
        cplx sum = 0.0;
        double binom = 1;
        for (int j = 0; j <= q; ++j) {
            sum += binom * std::pow(a, q - j) * small_moment(j, s, h);
            binom = binom * (q - j) / (j + 1);
        }
        return std::exp(-s * a) * sum;
    }
    auto anti = [&](double y) {
        cplx acc = 0.0, fall = 1.0, sp = s;
        for (int k = 0; k <= q; ++k) {
            acc += fall * std::pow(y, q - k) / sp;
            fall *= static_cast<double>(q - k);
            sp *= s;
        }
        return -std::exp(-s * y) * acc;
    };
    return anti(b) - anti(a);
}

double quad_tol(const std::function<cplx(double)>& f, double a, double b, double rel) {
    const GaussRule& g = gauss_legendre(32);
    double h = 0.5 * (b - a), c = 0.5 * (a + b), s = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::abs(f(c + h * g.x[i]));
    return std::max(rel * s * h, 1e-300);
}

}  // namespace

cplx laplace(const TestFunction& phi, int k, cplx s) {
    cplx total = 0.0;
    for (auto& pc : phi.pieces()) {
        for (auto& [p, c] : pc.coeffs) {
            int q = p + k;
            if (q >= 0) {
                total += c * power_exp_integral(q, s, pc.lo, pc.hi);
            } else {
                auto f = [&](double y) { return ipow(y, q) * std::exp(-s * y); };
                total += c * integrate(f, pc.lo, pc.hi, quad_tol(f, pc.lo, pc.hi, 1e-14)).value;
            }
        }
    }
    return total;
}

cplx laplace_quadrature(const TestFunction& phi, int k, cplx s) {
    cplx total = 0.0;
    for (auto& pc : phi.pieces()) {
        auto f = [&](double y) { return pc.eval(y) * std::pow(y, k) * std::exp(-s * y); };
        total += integrate(f, pc.lo, pc.hi, quad_tol(f, pc.lo, pc.hi, 1e-14)).value;
    }
    return total;
}

double lseries_tail_bound(const QExpansion& e, const TestFunction& phi) {
    if (phi.empty()) return 0;
    Growth g = e.effective_growth();
    if (!(g.t > 1)) return std::numeric_limits<double>::infinity();
    double c1 = phi.support_lo();
    double mass = 0;
    for (int k : e.S()) {
        double m = 0;
        for (auto& pc : phi.pieces()) {
            auto f = [&](double y) { return cplx(std::abs(pc.eval(y)) * std::pow(y, k)); };
            m += integrate(f, pc.lo, pc.hi, quad_tol(f, pc.lo, pc.hi, 1e-6), 6).value.real();
        }
        mass += m;
    }
    // Each stored side contributes kappa e^{C n^{1/t}} * mass * e^{-2 pi n c1 / M}.
    double sum = 0;
    for (long n = std::max<long>(e.nmax() + 1, 1); n < e.nmax() + 1000000L; ++n) {
        double log_term = std::log(2 * g.kappa * mass + 1e-300) + g.C * std::pow(static_cast<double>(n), 1.0 / g.t) -
                          2 * kPi * n * c1 / e.M();
        double term = std::exp(log_term);
        sum += term;
        if (term < 1e-20 * sum || (term == 0 && n > e.nmax() + 10)) break;
    }
    return sum;
}

bool in_test_space(const QExpansion& e, const TestFunction& phi) { return std::isfinite(lseries_tail_bound(e, phi)); }

LValue lseries_series(const QExpansion& e, const TestFunction& phi) {
    double tail = lseries_tail_bound(e, phi);
    if (!std::isfinite(tail)) throw PreconditionError("lseries: test function is not in the test space of the expansion");
    LValue out;
    for (auto& [key, c] : e.terms()) {
        auto [k, n] = key;
        if (c.a == cplx(0.0) && c.b == cplx(0.0)) continue;
        out.value += (c.a + c.b) * laplace(phi, k, 2 * kPi * n / e.M());
        ++out.terms_used;
    }
    out.abs_tail = tail;
    return out;
}

LValue lseries_integral(const Evaluator& F, const TestFunction& phi) {
    LValue out;
    for (auto& pc : phi.pieces()) {
        auto f = [&](double y) { return F(cplx(0, y)) * pc.eval(y); };
        QuadResult q = integrate(f, pc.lo, pc.hi, quad_tol(f, pc.lo, pc.hi, 1e-13));
        out.value += q.value;
        out.abs_tail += q.error;
        out.terms_used += q.panels;
    }
    return out;
}

LValue lseries_integral(const QExpansion& e, const TestFunction& phi) {
    LValue out = lseries_integral(evaluator(e), phi);
    double tail = lseries_tail_bound(e, phi);
    if (std::isfinite(tail)) out.abs_tail += tail;
    return out;
}

Evaluator twist_evaluator(const Evaluator& F, const DirichletCharacter& chi) {
    return [F, chi](cplx z) {
        i64 D = chi.modulus();
        cplx s = 0.0;
        for (i64 mu = 0; mu < D; ++mu) {
            cplx c = chi(mu);
            if (c == cplx(0.0)) continue;
            s += std::conj(c) * F((z + static_cast<double>(mu)) / static_cast<double>(D));
        }
        return s;
    };
}

namespace {

void check_fe_args(i64 N, i64 D, const DirichletCharacter& chi, const DirichletCharacter& psi) {
    if (N < 1 || D < 1) throw InvalidArgument("functional equation: N and D must be positive");
    if (gcd(D, N) != 1) throw InvalidArgument("functional equation: gcd(D, N) must be 1");
    if (chi.modulus() != D) throw InvalidArgument("functional equation: chi must have modulus D");
    if (psi.modulus() != N) throw InvalidArgument("functional equation: psi must have modulus N");
}

cplx fe_factor(Weights w, i64 N, i64 D, const DirichletCharacter& chi, const DirichletCharacter& psi) {
    return ipow(kI, w.r - w.s) * chi(-N) * psi(D) * std::pow(static_cast<double>(N), -(w.w() - 2) / 2.0);
}

}  // namespace

FEResult functional_equation(const QExpansion& F, const QExpansion& G, Weights w, i64 N, i64 D,
                             const DirichletCharacter& chi, const DirichletCharacter& psi, const TestFunction& phi,
                             cplx sign, bool with_series) {
    check_fe_args(N, D, chi, psi);
    QExpansion Fc = twist(F, chi), Gc = twist(G, conjugate(chi));
    TestFunction phiW = single_slash_W(phi, 2 - w.w(), N);
    cplx k = sign * fe_factor(w, N, D, chi, psi);
    FEResult r;
    r.lhs = lseries_integral(Fc, phi).value;
    r.rhs = k * lseries_integral(Gc, phiW).value;
    r.residual = std::abs(r.lhs - r.rhs);
    if (with_series) {
        r.lhs_series = lseries_series(Fc, phi).value;
        r.rhs_series = k * lseries_series(Gc, phiW).value;
    }
    return r;
}

FEResult functional_equation(const Evaluator& F, const Evaluator& G, Weights w, i64 N, i64 D,
                             const DirichletCharacter& chi, const DirichletCharacter& psi, const TestFunction& phi,
                             cplx sign) {
    check_fe_args(N, D, chi, psi);
    TestFunction phiW = single_slash_W(phi, 2 - w.w(), N);
    FEResult r;
    r.lhs = lseries_integral(twist_evaluator(F, chi), phi).value;
    r.rhs = sign * fe_factor(w, N, D, chi, psi) * lseries_integral(twist_evaluator(G, conjugate(chi)), phiW).value;
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

double functional_equation_residual(const QExpansion& F, const QExpansion& G, Weights w, i64 N, i64 D,
                                    const DirichletCharacter& chi, const DirichletCharacter& psi,
                                    const TestFunction& phi) {
    return functional_equation(F, G, w, N, D, chi, psi, phi).residual;
}

double functional_equation_residual(const Evaluator& F, const Evaluator& G, Weights w, i64 N, i64 D,
                                    const DirichletCharacter& chi, const DirichletCharacter& psi,
                                    const TestFunction& phi) {
    return functional_equation(F, G, w, N, D, chi, psi, phi).residual;
}

LValue lseries_u(const BiExpansion& e, const TestFunction& phi, double u) {
    double rho = 1 + u * u, sr = std::sqrt(rho);
    LValue out;
    for (auto& [key, a] : e.terms()) {
        auto [j, m, n] = key;
        if (a == cplx(0.0)) continue;
        cplx s = 2 * kPi * cplx(m + n, u * (n - m)) / (e.M() * sr);
        out.value += std::pow(rho, -(j + 1) / 2.0) * a * laplace(phi, j, s);
        ++out.terms_used;
    }
    return out;
}

LValue lseries_u_integral(const Evaluator& F, const TestFunction& phi, double u) {
    double sr = std::sqrt(1 + u * u);
    LValue out;
    for (auto& pc : phi.pieces()) {
        auto f = [&](double y) { return F(cplx(u * y, y)) * pc.eval(y * sr); };
        double a = pc.lo / sr, b = pc.hi / sr;
        QuadResult q = integrate(f, a, b, quad_tol(f, a, b, 1e-13));
        out.value += q.value;
        out.abs_tail += q.error;
        out.terms_used += q.panels;
    }
    return out;
}

FEResult functional_equation_u(const BiExpansion& F, const BiExpansion& G, Weights w, i64 N, i64 D,
                               const DirichletCharacter& chi, const DirichletCharacter& psi, const TestFunction& phi,
                               double u, bool with_series) {
    check_fe_args(N, D, chi, psi);
    BiExpansion Fc = twist(F, chi), Gc = twist(G, conjugate(chi));
    TestFunction phiW = single_slash_W(phi, 2 - w.w(), N);
    double rho = 1 + u * u;
    cplx k = ipow(cplx(-u, 1), w.r) * ipow(cplx(-u, -1), w.s) * chi(-N) * psi(D) * std::pow(rho, -w.w() / 2.0) *
             std::pow(static_cast<double>(N), -(w.w() - 2) / 2.0);
    FEResult r;
    r.lhs = lseries_u_integral(evaluator(Fc), phi, u).value;
    r.rhs = k * lseries_u_integral(evaluator(Gc), phiW, -u).value;
    r.residual = std::abs(r.lhs - r.rhs);
    if (with_series) {
        r.lhs_series = lseries_u(Fc, phi, u).value;
        r.rhs_series = k * lseries_u(Gc, phiW, -u).value;
    }
    return r;
}

double functional_equation_residual_u(const BiExpansion& F, const BiExpansion& G, Weights w, i64 N, i64 D,
                                      const DirichletCharacter& chi, const DirichletCharacter& psi,
                                      const TestFunction& phi, double u) {
    return functional_equation_u(F, G, w, N, D, chi, psi, phi, u).residual;
}

}  // namespace ramf
