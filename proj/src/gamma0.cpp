#include <array>
#include <map>
#include <queue>

#include "ramf/modular_group.hpp"

namespace ramf {

namespace {

// Coset table of Gamma_0(N) \ SL_2(Z) under right multiplication by S and T.
// Cosets are points of P^1(Z/N), keyed by the canonical bottom row.
struct CosetTable {
    i64 N;
    std::map<std::pair<i64, i64>, int> index;
    std::vector<IntegerMatrix> transversal;
    // schreier[i][g] = (generator index or -1 for identity, exponent +1/-1)
    std::vector<std::array<std::pair<int, int>, 2>> schreier;
    std::vector<IntegerMatrix> gens;

    std::pair<i64, i64> canonical(i64 c, i64 d) const {
        if (N == 1) return {0, 0};
        c = floor_mod(c, N);
        d = floor_mod(d, N);
        std::pair<i64, i64> best{N, N};
        for (i64 u = 1; u < N; ++u) {
            if (gcd(u, N) != 1) continue;
            std::pair<i64, i64> cand{u * c % N, u * d % N};
            if (cand < best) best = cand;
        }
        return best;
    }

    int coset_of(const IntegerMatrix& g) const { return index.at(canonical(g.c, g.d)); }

    explicit CosetTable(i64 n) : N(n) {
        const IntegerMatrix letters[2] = {IntegerMatrix::S(), IntegerMatrix::T()};
        index[canonical(0, 1)] = 0;
        transversal.push_back(IntegerMatrix::identity());
        std::queue<int> q;
        q.push(0);
        while (!q.empty()) {
            int i = q.front();
            q.pop();
            for (const auto& g : letters) {
                IntegerMatrix m = transversal[static_cast<std::size_t>(i)] * g;
                auto key = canonical(m.c, m.d);
                if (index.count(key)) continue;
                int j = static_cast<int>(transversal.size());
                index[key] = j;
                transversal.push_back(m);
                q.push(j);
            }
        }
        schreier.resize(transversal.size());
        for (std::size_t i = 0; i < transversal.size(); ++i) {
            for (int l = 0; l < 2; ++l) {
                IntegerMatrix m = transversal[i] * letters[l];
                int j = coset_of(m);
                IntegerMatrix x = m * transversal[static_cast<std::size_t>(j)].inverse();
                schreier[i][static_cast<std::size_t>(l)] = record(x);
            }
        }
    }

    std::pair<int, int> record(IntegerMatrix x) {
        if (x == IntegerMatrix::identity()) return {-1, 1};
        int e = 1;
        IntegerMatrix inv = x.inverse();
        bool flip = x.c < 0 || (x.c == 0 && x.b < 0);
        if (flip && !(inv == x)) {
            x = inv;
            e = -1;
        }
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (gens[k] == x) return {static_cast<int>(k), e};
        gens.push_back(x);
        return {static_cast<int>(gens.size() - 1), e};
    }
};

void check_level(i64 N) {
    if (N < 1 || N > 100) throw InvalidArgument("gamma0_generators: N must lie in [1, 100]");
}

}  // namespace

std::vector<IntegerMatrix> gamma0_generators(i64 N) {
    check_level(N);
    return CosetTable(N).gens;
}

std::string sl2z_word(const IntegerMatrix& g) {
    if (!g.in_sl2z()) throw InvalidArgument("sl2z_word: determinant must be 1");
    std::string w;
    IntegerMatrix m = g;
    auto push_T = [&w](i64 q) {
        for (i64 k = 0; k < q; ++k) w.push_back('T');
        for (i64 k = 0; k < -q; ++k) w.push_back('t');
    };
    while (m.c != 0) {
        // nearest-integer quotient keeps |c| strictly decreasing
        i64 q = m.a / m.c;
        i64 r = m.a - q * m.c;
        if (2 * std::abs(r) > std::abs(m.c)) q += ((r > 0) == (m.c > 0)) ? 1 : -1;
        push_T(q);
        m = IntegerMatrix{1, -q, 0, 1} * m;
        w.push_back('S');
        m = IntegerMatrix::S().inverse() * m;
    }
    if (m.a == 1) {
        push_T(m.b);
    } else {
        w += "SS";
        push_T(-m.b);
    }
    return w;
}

std::vector<std::pair<int, int>> gamma0_rewrite(const IntegerMatrix& gamma, i64 N) {
    check_level(N);
    if (!gamma.in_gamma0(N)) throw InvalidArgument("gamma0_rewrite: matrix not in Gamma_0(N)");
    CosetTable tab(N);
    std::vector<std::pair<int, int>> out;
    IntegerMatrix prefix = IntegerMatrix::identity();
    int cur = 0;
    for (char ch : sl2z_word(gamma)) {
        bool inverse = (ch == 's' || ch == 't');
        int l = (ch == 'S' || ch == 's') ? 0 : 1;
        IntegerMatrix letter = l == 0 ? IntegerMatrix::S() : IntegerMatrix::T();
        if (inverse) letter = letter.inverse();
        prefix = prefix * letter;
        int next = tab.coset_of(prefix);
        std::pair<int, int> x;
        if (!inverse) {
            x = tab.schreier[static_cast<std::size_t>(cur)][static_cast<std::size_t>(l)];
        } else {
            x = tab.schreier[static_cast<std::size_t>(next)][static_cast<std::size_t>(l)];
            x.second = -x.second;
        }
        if (x.first >= 0) out.push_back(x);
        cur = next;
    }
    return out;
}

}  // namespace ramf
