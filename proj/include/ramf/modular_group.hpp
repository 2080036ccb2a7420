#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ramf/arithmetic.hpp"
#include "ramf/common.hpp"
#include "ramf/test_function.hpp"

namespace ramf {

struct IntegerMatrix {
    i64 a = 1, b = 0, c = 0, d = 1;

    i64 det() const { return a * d - b * c; }
    bool in_sl2z() const { return det() == 1; }
    bool in_gamma0(i64 N) const { return det() == 1 && floor_mod(c, N) == 0; }
    // Inverse of a determinant-one matrix.
    IntegerMatrix inverse() const { return {d, -b, -c, a}; }
    IntegerMatrix operator-() const { return {-a, -b, -c, -d}; }

    friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

    static IntegerMatrix identity() { return {1, 0, 0, 1}; }
    static IntegerMatrix S() { return {0, -1, 1, 0}; }
    static IntegerMatrix T() { return {1, 1, 0, 1}; }
};

struct RealMatrix {
    double a = 1, b = 0, c = 0, d = 1;

    RealMatrix() = default;
    RealMatrix(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}
    RealMatrix(const IntegerMatrix& m)
        : a(static_cast<double>(m.a)), b(static_cast<double>(m.b)), c(static_cast<double>(m.c)),
          d(static_cast<double>(m.d)) {}

    double det() const { return a * d - b * c; }
    cplx act(cplx z) const { return (a * z + b) / (c * z + d); }

    friend RealMatrix operator*(const RealMatrix& x, const RealMatrix& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

struct Weights {
    int r = 0, s = 0;
    int w() const { return r + s; }
    friend bool operator==(const Weights&, const Weights&) = default;
};

// A cusp a/c in lowest terms with c > 0, or infinity (stored as 1/0).
struct Cusp {
    i64 a = 1, c = 0;

    Cusp() = default;
    Cusp(i64 num, i64 den);
    static Cusp infinity() { return {}; }

    bool is_infinity() const { return c == 0; }
    std::string str() const;
    static Cusp parse(const std::string& s);
    friend bool operator==(const Cusp&, const Cusp&) = default;
};

using Evaluator = std::function<cplx(cplx)>;

cplx j_factor(const RealMatrix& g, cplx z);

// (F ||_{r,s} g)(z) = det^{w/2} j(g,z)^{-r} j(g,zbar)^{-s} F(g z)
Evaluator double_slash(Evaluator F, Weights w, const RealMatrix& g);

// (phi |_a W_N)(x) = (N x)^{-a} phi(1/(N x))
TestFunction single_slash_W(const TestFunction& phi, int a, i64 N);

RealMatrix fricke_matrix(i64 N);

// W_N gamma W_N^{-1} for gamma in Gamma_0(N).
IntegerMatrix fricke_conjugate(const IntegerMatrix& gamma, i64 N);

std::vector<Cusp> cusps_of_gamma0(i64 N);
bool cusps_equivalent(const Cusp& u, const Cusp& v, i64 N);
IntegerMatrix scaling_matrix(const Cusp& u, i64 N);
i64 cusp_width(const Cusp& u, i64 N);
// gamma_u = sigma_u T^h sigma_u^{-1}, generator of the stabiliser.
IntegerMatrix cusp_stabilizer_generator(const Cusp& u, i64 N);
bool is_singular_cusp(const Cusp& u, const DirichletCharacter& chi, i64 N);

// One representative gamma per coset of Gamma_u \ Gamma_0(N), restricted to
// bottom rows (c', d') of sigma_u^{-1} gamma in the box max(|c'|,|d'|) <= bound.
struct CosetRep {
    IntegerMatrix gamma;
    i64 cp, dp;
};
std::vector<CosetRep> coset_reps_with_rows(const Cusp& u, i64 N, i64 bound);
std::vector<IntegerMatrix> coset_reps_cusp(const Cusp& u, i64 N, i64 bound);

// Index of Gamma_0(N) in SL_2(Z).
i64 gamma0_index(i64 N);

// Generators of Gamma_0(N) from the coset action of S and T.
std::vector<IntegerMatrix> gamma0_generators(i64 N);

// Word in S, T for an element of SL_2(Z); letters 'S','s' (S^{-1}),'T','t' (T^{-1}).
std::string sl2z_word(const IntegerMatrix& g);

// Rewrites gamma in Gamma_0(N) as a product of gamma0_generators(N) and their
// inverses; returns the list of (generator index, +1/-1).
std::vector<std::pair<int, int>> gamma0_rewrite(const IntegerMatrix& gamma, i64 N);

}  // namespace ramf
