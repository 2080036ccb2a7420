#pragma once

#include <vector>

#include "ramf/common.hpp"

namespace ramf {

struct IntegerMatrix;

i64 gcd(i64 a, i64 b);

// Returns g = gcd(a,b) >= 0 and sets x, y with a*x + b*y = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);

// Inverse of a modulo m (m >= 1). Throws InvalidArgument if not invertible.
i64 mod_inverse(i64 a, i64 m);

std::vector<std::pair<i64, int>> factorize(i64 n);
i64 euler_phi(i64 n);
i64 carmichael_lambda(i64 n);
std::vector<i64> divisors(i64 n);

// exp(2 pi i k / n), exact at the eight points where that is representable.
cplx root_of_unity(i64 k, i64 n);

class DirichletCharacter {
public:
    DirichletCharacter() = default;
    DirichletCharacter(i64 modulus, std::vector<cplx> values, int index, std::vector<int> exponents);

    i64 modulus() const { return modulus_; }
    int index() const { return index_; }
    const std::vector<int>& exponents() const { return exponents_; }
    const std::vector<cplx>& values() const { return values_; }

    cplx operator()(i64 n) const { return values_[static_cast<std::size_t>(floor_mod(n, modulus_))]; }

    bool is_trivial() const;
    // chi(-1) as +1 or -1.
    int parity() const;

private:
    i64 modulus_ = 1;
    std::vector<cplx> values_{cplx(1.0)};
    int index_ = 0;
    std::vector<int> exponents_;
};

// All characters mod D, trivial first, ordered lexicographically by exponent
// vector on the generators returned by unit_generators(D).
std::vector<DirichletCharacter> character_group(i64 D);

DirichletCharacter character(i64 D, int index);
DirichletCharacter trivial_character(i64 D);
DirichletCharacter conjugate(const DirichletCharacter& chi);

// Generators of (Z/D)^x with their orders, one per cyclic factor.
struct UnitGenerator {
    i64 g;
    i64 order;
};
std::vector<UnitGenerator> unit_generators(i64 D);

// chi(d) for gamma = (a b; c d).
cplx character_of_matrix(const DirichletCharacter& chi, const IntegerMatrix& gamma);

// tau_chi(n) = sum_{mu mod D} chi(mu) e^{2 pi i n mu / D}
cplx gauss_sum(const DirichletCharacter& chi, i64 n);

// Brute-force search over proper divisors for an inducing modulus.
bool is_primitive(const DirichletCharacter& chi);

}  // namespace ramf
