#include "ramf/arithmetic.hpp"

#include <algorithm>
#include <cmath>

#include "ramf/modular_group.hpp"

namespace ramf {

i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

i64 mod_inverse(i64 a, i64 m) {
    if (m < 1) throw InvalidArgument("mod_inverse: modulus must be positive");
    if (m == 1) return 0;
    i64 x, y;
    if (ext_gcd(floor_mod(a, m), m, x, y) != 1) throw InvalidArgument("mod_inverse: not invertible");
    return floor_mod(x, m);
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> out;
    if (n < 0) n = -n;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

i64 carmichael_lambda(i64 n) {
    i64 l = 1;
    for (auto [p, e] : factorize(n)) {
        i64 q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        i64 lp = q / p * (p - 1);
        if (p == 2 && e >= 3) lp /= 2;
        l = l / gcd(l, lp) * lp;
    }
    return l;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> out;
    for (i64 d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        if (d * d != n) out.push_back(n / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

cplx root_of_unity(i64 k, i64 n) {
    k = floor_mod(k, n);
    if (k == 0) return 1.0;
    if (8 * k % n == 0) {
        static const double h = std::sqrt(0.5);
        static const cplx eighth[8] = {{1, 0}, {h, h}, {0, 1}, {-h, h}, {-1, 0}, {-h, -h}, {0, -1}, {h, -h}};
        return eighth[8 * k / n];
    }
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
}

DirichletCharacter::DirichletCharacter(i64 modulus, std::vector<cplx> values, int index, std::vector<int> exponents)
    : modulus_(modulus), values_(std::move(values)), index_(index), exponents_(std::move(exponents)) {}

bool DirichletCharacter::is_trivial() const {
    for (i64 n = 0; n < modulus_; ++n)
        if (gcd(n, modulus_) == 1 && values_[n] != cplx(1.0)) return false;
    return true;
}

int DirichletCharacter::parity() const { return std::real((*this)(-1)) > 0 ? 1 : -1; }

namespace {

i64 multiplicative_order(i64 g, i64 m) {
    if (m == 1) return 1;
    i64 x = g % m, k = 1;
    while (x != 1) {
        x = x * g % m;
        ++k;
    }
    return k;
}

// Element of Z/D congruent to g mod q and to 1 mod D/q.
i64 crt_lift(i64 g, i64 q, i64 D) {
    i64 rest = D / q;
    if (rest == 1) return floor_mod(g, D);
    // x = 1 + rest*t with 1 + rest*t = g mod q
    i64 t = floor_mod((g - 1) * mod_inverse(rest, q), q);
    return floor_mod(1 + rest * t, D);
}

}  // namespace

std::vector<UnitGenerator> unit_generators(i64 D) {
    if (D < 1) throw InvalidArgument("invalid modulus: D must be positive");
    std::vector<UnitGenerator> gens;
    for (auto [p, e] : factorize(D)) {
        i64 q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        if (q == 2) continue;
        if (p == 2 && e >= 3) {
            gens.push_back({crt_lift(q - 1, q, D), 2});
            gens.push_back({crt_lift(5, q, D), q / 4});
            continue;
        }
        i64 phi = q / p * (p - 1);
        for (i64 g = 2; g < q; ++g) {
            if (g % p == 0) continue;
            if (multiplicative_order(g, q) == phi) {
                gens.push_back({crt_lift(g, q, D), phi});
                break;
            }
        }
    }
    return gens;
}

namespace {

// Mixed-radix digits of idx, most significant first.
std::vector<int> digits(i64 idx, const std::vector<UnitGenerator>& gens) {
    std::vector<int> e(gens.size(), 0);
    for (std::size_t i = gens.size(); i-- > 0;) {
        e[i] = static_cast<int>(idx % gens[i].order);
        idx /= gens[i].order;
    }
    return e;
}

}  // namespace

std::vector<DirichletCharacter> character_group(i64 D) {
    auto gens = unit_generators(D);
    std::size_t r = gens.size();
    i64 total = 1, lam = 1;
    for (auto& g : gens) {
        total *= g.order;
        lam = lam / gcd(lam, g.order) * g.order;
    }

    std::vector<std::vector<int>> dlog(static_cast<std::size_t>(D));
    for (i64 idx = 0; idx < total; ++idx) {
        auto ex = digits(idx, gens);
        i64 x = 1 % D;
        for (std::size_t i = 0; i < r; ++i)
            for (int k = 0; k < ex[i]; ++k) x = x * gens[i].g % D;
        dlog[static_cast<std::size_t>(x)] = ex;
    }

    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(total));
    for (i64 idx = 0; idx < total; ++idx) {
        auto e = digits(idx, gens);
        std::vector<cplx> vals(static_cast<std::size_t>(D), cplx(0.0));
        for (i64 n = 0; n < D; ++n) {
            if (gcd(n, D) != 1) continue;
            const auto& l = dlog[static_cast<std::size_t>(n)];
            i64 num = 0;
            for (std::size_t i = 0; i < r; ++i) num += static_cast<i64>(e[i]) * l[i] * (lam / gens[i].order);
            vals[static_cast<std::size_t>(n)] = root_of_unity(num, lam);
        }
        out.emplace_back(D, std::move(vals), static_cast<int>(idx), e);
    }
    return out;
}

DirichletCharacter character(i64 D, int index) {
    auto g = character_group(D);
    if (index < 0 || index >= static_cast<int>(g.size()))
        throw InvalidArgument("character index out of range for modulus " + std::to_string(D));
    return g[static_cast<std::size_t>(index)];
}

DirichletCharacter trivial_character(i64 D) { return character(D, 0); }

DirichletCharacter conjugate(const DirichletCharacter& chi) {
    for (auto& c : character_group(chi.modulus())) {
        bool same = true;
        for (i64 n = 0; n < chi.modulus() && same; ++n)
            if (std::abs(c(n) - std::conj(chi(n))) > 1e-12) same = false;
        if (same) return c;
    }
    throw InternalError("conjugate character not found");
}

cplx character_of_matrix(const DirichletCharacter& chi, const IntegerMatrix& gamma) { return chi(gamma.d); }

cplx gauss_sum(const DirichletCharacter& chi, i64 n) {
    i64 D = chi.modulus();
    cplx s = 0.0;
    for (i64 mu = 0; mu < D; ++mu) {
        cplx c = chi(mu);
        if (c == cplx(0.0)) continue;
        s += c * root_of_unity(floor_mod(n, D) * mu % D, D);
    }
    return s;
}

bool is_primitive(const DirichletCharacter& chi) {
    i64 D = chi.modulus();
    for (i64 d : divisors(D)) {
        if (d == D) break;
        bool induced = true;
        for (i64 n = 1; n < D && induced; n += d)
            if (gcd(n, D) == 1 && std::abs(chi(n) - 1.0) > 1e-12) induced = false;
        if (induced) return false;
    }
    return true;
}

}  // namespace ramf
