#include "ramf/modular_group.hpp"

#include <cmath>
#include <sstream>

namespace ramf {

Cusp::Cusp(i64 num, i64 den) {
    if (den == 0) {
        if (num == 0) throw InvalidArgument("cusp 0/0");
        a = 1;
        c = 0;
        return;
    }
    i64 g = gcd(num, den);
    num /= g;
    den /= g;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    a = num;
    c = den;
}

std::string Cusp::str() const {
    if (is_infinity()) return "inf";
    return std::to_string(a) + "/" + std::to_string(c);
}

Cusp Cusp::parse(const std::string& s) {
    if (s == "inf" || s == "oo" || s == "infinity") return infinity();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Cusp(std::stoll(s), 1);
        return Cusp(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw InvalidArgument("cannot parse cusp '" + s + "'");
    }
}

cplx j_factor(const RealMatrix& g, cplx z) { return g.c * z + g.d; }

Evaluator double_slash(Evaluator F, Weights w, const RealMatrix& g) {
    double det = g.det();
    if (!(det > 0)) throw InvalidArgument("double_slash: determinant must be positive");
    double scale = std::pow(det, 0.5 * w.w());
    return [F = std::move(F), w, g, scale](cplx z) {
        if (!(z.imag() > 0)) throw DomainError("double_slash: evaluation point must lie in the upper half-plane");
        cplx j = g.c * z + g.d;
        cplx jb = g.c * std::conj(z) + g.d;
        return scale * ipow(j, -w.r) * ipow(jb, -w.s) * F(g.act(z));
    };
}

TestFunction single_slash_W(const TestFunction& phi, int a, i64 N) {
    if (N < 1) throw InvalidArgument("single_slash_W: N must be positive");
    double Nd = static_cast<double>(N);
    std::vector<Piece> out;
    for (auto it = phi.pieces().rbegin(); it != phi.pieces().rend(); ++it) {
        if (!(it->lo > 0)) throw UnsupportedInput("single_slash_W: support touches 0");
        Piece p;
        p.lo = 1.0 / (Nd * it->hi);
        p.hi = 1.0 / (Nd * it->lo);
        for (auto [pow, c] : it->coeffs) p.coeffs[-a - pow] = c * std::pow(Nd, -a - pow);
        out.push_back(std::move(p));
    }
    return TestFunction(std::move(out));
}

RealMatrix fricke_matrix(i64 N) {
    double r = std::sqrt(static_cast<double>(N));
    return {0.0, -1.0 / r, r, 0.0};
}

IntegerMatrix fricke_conjugate(const IntegerMatrix& g, i64 N) {
    if (!g.in_gamma0(N)) throw InvalidArgument("fricke_conjugate: matrix not in Gamma_0(N)");
    return {g.d, -g.c / N, -g.b * N, g.a};
}

bool cusps_equivalent(const Cusp& u, const Cusp& v, i64 N) {
    if (N == 1) return true;
    i64 g = gcd(u.c, N);
    for (i64 y = 1; y < N; ++y) {
        if (gcd(y, N) != 1) continue;
        if (floor_mod(v.c - y * u.c, N) != 0) continue;
        if (floor_mod(y * v.a - u.a, g) == 0) return true;
    }
    return false;
}

std::vector<Cusp> cusps_of_gamma0(i64 N) {
    if (N < 1) throw InvalidArgument("cusps_of_gamma0: N must be positive");
    std::vector<Cusp> out{Cusp::infinity()};
    for (i64 c : divisors(N)) {
        if (c == N) continue;
        i64 g = gcd(c, N / c);
        for (i64 a0 = 0; a0 < g; ++a0) {
            if (gcd(a0, g) != 1) continue;
            i64 a = a0;
            while (gcd(a, c) != 1) a += g;
            out.emplace_back(a, c);
        }
    }
    return out;
}

IntegerMatrix scaling_matrix(const Cusp& u, i64 N) {
    (void)N;
    if (u.is_infinity()) return IntegerMatrix::identity();
    i64 d = mod_inverse(u.a, u.c);
    i64 b = (u.a * d - 1) / u.c;
    return {u.a, b, u.c, d};
}

i64 cusp_width(const Cusp& u, i64 N) {
    IntegerMatrix s = scaling_matrix(u, N);
    for (i64 h = 1;; ++h) {
        IntegerMatrix g = s * IntegerMatrix{1, h, 0, 1} * s.inverse();
        if (g.in_gamma0(N)) return h;
    }
}

IntegerMatrix cusp_stabilizer_generator(const Cusp& u, i64 N) {
    IntegerMatrix s = scaling_matrix(u, N);
    return s * IntegerMatrix{1, cusp_width(u, N), 0, 1} * s.inverse();
}

bool is_singular_cusp(const Cusp& u, const DirichletCharacter& chi, i64 N) {
    if (u.is_infinity()) return true;
    IntegerMatrix g = cusp_stabilizer_generator(u, N);
    return std::abs(chi(g.d) - 1.0) < 1e-12;
}

std::vector<CosetRep> coset_reps_with_rows(const Cusp& u, i64 N, i64 bound) {
    if (bound < 1) throw InvalidArgument("coset_reps_cusp: bound must be positive");
    IntegerMatrix s = scaling_matrix(u, N);
    std::vector<CosetRep> out;
    for (i64 cp = 0; cp <= bound; ++cp) {
        for (i64 dp = -bound; dp <= bound; ++dp) {
            if (cp == 0 && dp <= 0) continue;
            if (gcd(cp, dp) != 1) continue;
            i64 al, be;
            if (cp == 0) {
                al = 1;
                be = 0;
            } else {
                al = mod_inverse(dp, cp);
                be = (al * dp - 1) / cp;
            }
            // bottom-left entry of s * (al + k cp, be + k dp; cp, dp)
            i64 base = floor_mod(s.c * al + s.d * cp, N);
            i64 step = floor_mod(s.c * cp, N);
            i64 k = -1;
            for (i64 t = 0; t < N; ++t)
                if (floor_mod(base + t * step, N) == 0) {
                    k = t;
                    break;
                }
            if (k < 0) continue;
            IntegerMatrix mu{al + k * cp, be + k * dp, cp, dp};
            out.push_back({s * mu, cp, dp});
        }
    }
    return out;
}

std::vector<IntegerMatrix> coset_reps_cusp(const Cusp& u, i64 N, i64 bound) {
    std::vector<IntegerMatrix> out;
    for (auto& r : coset_reps_with_rows(u, N, bound)) out.push_back(r.gamma);
    return out;
}

i64 gamma0_index(i64 N) {
    i64 r = N;
    for (auto [p, e] : factorize(N)) r = r / p * (p + 1);
    return r;
}

}  // namespace ramf
