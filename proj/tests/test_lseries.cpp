#include <doctest.h>

#include <random>

#include "ramf/eisenstein.hpp"
#include "ramf/lseries.hpp"

using namespace ramf;

namespace {

QExpansion random_expansion(std::mt19937_64& rng, int terms) {
    std::uniform_int_distribution<int> K(-2, 1), Nn(0, 8);
    std::normal_distribution<double> G;
    QExpansion e(1, 0, 8);
    for (int t = 0; t < terms; ++t) e.add(K(rng), Nn(rng), {G(rng), G(rng)}, {G(rng), G(rng)});
    return e;
}

TestFunction random_linear(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.3, 1.0), C(-1, 1);
    double a = U(rng), b = a + U(rng), c = b + U(rng);
    Piece p1{a, b, {{0, C(rng)}, {1, C(rng)}}};
    Piece p2{b, c, {{0, C(rng)}, {1, cplx(C(rng), C(rng))}}};
    return TestFunction({p1, p2});
}

}  // namespace

TEST_CASE("Laplace transforms of pieces") {
    auto ind = TestFunction::indicator(1, 2);
    CHECK(std::abs(laplace(ind, 0, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(laplace(ind, 0, 1.0) - 0.23254415793482963) < 1e-15);
    CHECK(std::abs(laplace(TestFunction::monomial(1, 2, 1), 0, 0.0) - 1.5) < 1e-15);
    for (int k : {-3, -1, 0, 2})
        for (double s : {0.0, 0.01, 1.0, 25.0})
            CHECK(std::abs(laplace(ind, k, s) - laplace_quadrature(ind, k, s)) < 1e-13);
}

TEST_CASE("series of single terms") {
    QExpansion q(1, 0, 1);
    q.add(0, 1, 1.0, 0.0);
    auto ind = TestFunction::indicator(1, 2);
    cplx expected = (std::exp(-2 * kPi) - std::exp(-4 * kPi)) / (2 * kPi);
    CHECK(std::abs(lseries_series(q, ind).value - expected) < 1e-17);
    CHECK(lseries_series(QExpansion(1, 0, 4), ind).value == cplx(0.0));
    QExpansion one(1, 0, 0);
    one.add(0, 0, 1.0, 0.0);
    CHECK(std::abs(lseries_integral(evaluator(one), ind).value - 1.0) < 1e-13);
}

TEST_CASE("test space membership") {
    auto e = level1_expansion(1, 16);
    e.declare_growth(e.fitted_growth());
    CHECK(in_test_space(e, TestFunction::indicator(0.5, 2)));
    QExpansion bounded(1, 0, 3);
    bounded.add(0, 3, 2.0, 0.0);
    CHECK(in_test_space(bounded, TestFunction::indicator(0.5, 2)));
}

TEST_CASE("series and integral agree") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        auto e = random_expansion(rng, 15);
        auto phi = random_linear(rng);
        CHECK(std::abs(lseries_series(e, phi).value - lseries_integral(evaluator(e), phi).value) < 1e-9);
    }
    auto E = level1_expansion(1, 64);
    auto phi = TestFunction::indicator(0.5, 2);
    CHECK(std::abs(lseries_series(E, phi).value - lseries_integral(E, phi).value) < 1e-6);
}

TEST_CASE("twisted evaluator matches the twisted expansion") {
    std::mt19937_64 rng(23);
    auto e = random_expansion(rng, 12);
    std::uniform_real_distribution<double> X(-1, 1), Y(0.3, 1.5);
    for (i64 D : {3, 4, 5})
        for (auto& chi : character_group(D)) {
            auto T = twist(e, chi);
            auto Tf = twist_evaluator(evaluator(e), chi);
            for (int i = 0; i < 5; ++i) {
                cplx z(X(rng), Y(rng));
                CHECK(std::abs(evaluate(T, z).value - Tf(z)) < 1e-10);
            }
        }
}

TEST_CASE("functional equation at level one") {
    auto E = level1_expansion(1, 64);
    auto one = trivial_character(1);
    auto phi = TestFunction::indicator(0.5, 2);
    CHECK(functional_equation_residual(E, E, {1, 1}, 1, 1, one, one, phi) < 1e-6);
    auto R = raise(E, 1);
    CHECK(functional_equation_residual(R, R, {2, 0}, 1, 1, one, one, phi) < 1e-5);
    auto asym = TestFunction::indicator(0.5, 1.5);
    CHECK(functional_equation_residual(E, E, {1, 1}, 1, 1, one, one, asym) < 1e-6);
    auto P = E;
    auto c = P.coef(1, 0);
    P.set(1, 0, 1.1 * c.a, 1.1 * c.b);
    auto fe = functional_equation(P, E, {1, 1}, 1, 1, one, one, asym);
    CHECK(fe.residual / std::abs(fe.rhs) > 1e-3);
    for (auto& chi : character_group(4))
        CHECK(functional_equation_residual(E, E, {1, 1}, 1, 4, chi, one, asym) < 1e-4);
    CHECK_THROWS_AS(functional_equation_residual(E, E, {1, 1}, 2, 4, character(4, 1), trivial_character(2), asym),
                    InvalidArgument);
}

TEST_CASE("auxiliary-variable L-series") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        auto e = random_expansion(rng, 10);
        auto phi = random_linear(rng);
        CHECK(std::abs(lseries_u(to_bi(e), phi, 0).value - lseries_series(e, phi).value) < 1e-10);
        for (double u : {0.5, 1.0})
            CHECK(std::abs(lseries_u(to_bi(e), phi, u).value - lseries_u_integral(evaluator(e), phi, u).value) < 1e-8);
    }
    QExpansion one(1, 0, 0);
    one.add(0, 0, 1.0, 0.0);
    auto ind = TestFunction::indicator(1, 2);
    CHECK(std::abs(lseries_u(to_bi(one), ind, 0.75).value - 1.0 / std::sqrt(1.5625)) < 1e-14);
}

TEST_CASE("auxiliary-variable functional equation") {
    auto E = level1_expansion(1, 64);
    auto B = to_bi(E);
    auto one = trivial_character(1);
    auto phi = TestFunction::indicator(0.5, 1.5);
    for (double u : {0.0, 0.5, 1.0}) CHECK(functional_equation_residual_u(B, B, {1, 1}, 1, 1, one, one, phi, u) < 1e-6);
    CHECK(std::abs(functional_equation_residual_u(B, B, {1, 1}, 1, 1, one, one, phi, 0) -
                   functional_equation_residual(E, E, {1, 1}, 1, 1, one, one, phi)) < 1e-10);
    cplx plus = lseries_u(B, phi, 0.5).value, minus = lseries_u(B, phi, -0.5).value;
    CHECK(std::abs(minus - std::conj(plus)) < 1e-8);
}
