#include <doctest.h>

#include <random>

#include "ramf/eisenstein.hpp"
#include "ramf/verifier.hpp"

using namespace ramf;

namespace {

EisensteinSpec ra(i64 N, i64 bound) {
    EisensteinSpec e;
    e.N = N;
    e.chi = trivial_character(N);
    e.bound = bound;
    return e;
}

QExpansion perturbed(const QExpansion& e, int k, int n, double f) {
    QExpansion p = e;
    auto c = p.coef(k, n);
    p.set(k, n, f * c.a, f * c.b);
    return p;
}

}  // namespace

TEST_CASE("modularity residual") {
    EisensteinSeries A(ra(1, 600));
    CHECK(modularity_residual(A, {1, 1}, IntegerMatrix::T(), trivial_character(1), {kI, cplx(0, 2)}) < 1e-9);
    CHECK(modularity_residual(A, {1, 1}, IntegerMatrix::S(), trivial_character(1), {kI}) < 1e-4);
    QExpansion junk(1, 0, 3);
    junk.add(0, 1, 1.0, 0.0);
    junk.add(1, 0, 0.5, 0.0);
    CHECK(modularity_residual(evaluator(junk), {1, 1}, IntegerMatrix::S(), trivial_character(1), {cplx(0.1, 0.9)}) > 1e-2);
}

TEST_CASE("Fricke relation residual") {
    auto E = level1_expansion(1, 64);
    auto one = trivial_character(1);
    std::vector<cplx> pts{kI, cplx(0.25, 1), cplx(-0.4, 1.2)};
    CHECK(fricke_relation_residual(E, E, {1, 1}, 1, 1, one, one, pts) < 1e-10);
    EisensteinSeries A(ra(1, 600));
    auto chi = character(4, 1);
    std::vector<cplx> off{cplx(0.1, 0.6)};
    CHECK(fricke_relation_residual(A, A, {1, 1}, 1, 4, chi, one, off) < 1e-4);
    Evaluator negA = [&](cplx z) { return -A(z); };
    CHECK(fricke_relation_residual(A, negA, {1, 1}, 1, 4, chi, one, off) > 1e-1);
}

TEST_CASE("vanishing certificate") {
    CHECK(vanishing_certificate(QExpansion(1, 0, 3)).vanishes);
    QExpansion pq(1, 0, 1);
    pq.add(0, 1, 1.0, -1.0);
    auto r = vanishing_certificate(pq);
    CHECK_FALSE(r.vanishes);
    CHECK(r.nonzero_P.empty());
    CHECK(r.nonzero_Q == std::vector<int>{1});
    QExpansion z0(1, 0, 0);
    z0.add(0, 0, 1.0, -1.0);
    auto a = vanishing_certificate(z0);
    CHECK(a.n0_ambiguity);
    CHECK_FALSE(a.coefficients_zero);
}

TEST_CASE("converse check on the level-one fixture") {
    auto E = level1_expansion(1, 64);
    auto family = bump_family(0.25, 4, 8);
    ConverseConfig cfg;
    cfg.cover_lo = 0.25;
    cfg.cover_hi = 4;
    auto v = converse_check(E, E, {1, 1}, 1, trivial_character(1), family, cfg);
    CHECK(v.passed);
    CHECK(v.max_residual < 1e-5);
    CHECK(v.complete);
    CHECK(v.witnesses.empty());

    auto bad = converse_check(E, perturbed(E, -1, 1, 1.1), {1, 1}, 1, trivial_character(1), family, cfg);
    CHECK_FALSE(bad.passed);
    REQUIRE_FALSE(bad.witnesses.empty());
    CHECK(bad.witnesses.front().D == 1);
    CHECK(bad.witnesses.front().chi == 0);
    CHECK(bad.witnesses.front().phi >= 0);

    auto flipped = cfg;
    flipped.sign_b = 1;
    CHECK_FALSE(converse_check(E, E, {1, 1}, 1, trivial_character(1), family, flipped).passed);
}

TEST_CASE("converse check with the auxiliary variable") {
    auto B = to_bi(level1_expansion(1, 48));
    auto family = bump_family(0.25, 4, 6);
    auto one = trivial_character(1);
    ConverseConfig cfg;
    cfg.cover_lo = 0.25;
    cfg.cover_hi = 4;
    auto v = converse_check_u(B, B, {1, 1}, 1, one, family, {0, 0.5, -0.5, 1, -1, 2, -2}, cfg);
    CHECK(v.passed);
    CHECK(v.warnings.empty());
    auto single = converse_check_u(B, B, {1, 1}, 1, one, family, {0}, cfg);
    CHECK_FALSE(single.warnings.empty());
    auto P = to_bi(perturbed(level1_expansion(1, 48), -1, 1, 1.1));
    cfg.phase_b = false;
    auto bad = converse_check_u(B, P, {1, 1}, 1, one, family, {2, -1, 0.5, 0}, cfg);
    CHECK_FALSE(bad.passed);
    REQUIRE_FALSE(bad.witnesses.empty());
    CHECK(bad.witnesses.front().u == 0.0);
}

TEST_CASE("expansion extraction") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> K(-1, 1), Nn(0, 6);
    std::normal_distribution<double> G;
    for (int t = 0; t < 3; ++t) {
        QExpansion e(1, 0, 6);
        for (int i = 0; i < 10; ++i) e.add(K(rng), Nn(rng), {G(rng), G(rng)}, {G(rng), G(rng)});
        auto x = extract_expansion(evaluator(e), 1, {-1, 0, 1}, 0, 6, {0.05, 0.07, 0.1, 0.14});
        // at n = 0 only a + b is visible
        QExpansion canon(1, 0, 6);
        for (auto& [key, c] : e.terms())
            canon.add(key.first, key.second, key.second == 0 ? c.a + c.b : c.a, key.second == 0 ? 0.0 : c.b);
        CHECK(max_coef_diff(x.expansion, canon) < 1e-8);
    }
    QExpansion one(1, 0, 0);
    one.add(0, 0, 1.0, 0.0);
    auto c = extract_expansion(evaluator(one), 1, {0}, 0, 4, {0.5, 1.0});
    CHECK(max_coef_diff(c.expansion, one) < 1e-12);
    for (auto& [key, coef] : c.expansion.terms())
        if (key != QExpansion::Key{0, 0}) CHECK(std::abs(coef.a) + std::abs(coef.b) < 1e-12);
}

TEST_CASE("extraction of the truncated series") {
    EisensteinSeries A(ra(1, 400));
    auto x = extract_expansion(A, 1, {-2, -1, 1}, 0, 8, {0.1, 0.13, 0.17, 0.22});
    CHECK(max_coef_diff(x.expansion, level1_expansion(1, 8)) < 1e-6);
}

TEST_CASE("growth scan") {
    EisensteinSeries A(ra(4, 200));
    std::vector<IntegerMatrix> gammas;
    for (auto& u : cusps_of_gamma0(4)) gammas.push_back(scaling_matrix(u, 4));
    auto g = cusp_growth_scan(A, {1, 1}, gammas, {3, 4, 5, 6, 8});
    REQUIRE(g.rows.size() == 3);
    for (auto& row : g.rows) CHECK(std::abs(row.A) < 0.1);
    CHECK_FALSE(g.any_flagged);
    QExpansion e(1, -1, 1);
    e.add(0, -1, 1.0, 0.0);
    auto h = cusp_growth_scan(evaluator(e), {0, 0}, {IntegerMatrix::identity()}, {1, 2, 3, 4});
    CHECK(h.rows[0].A == doctest::Approx(2 * kPi).epsilon(1e-6));
    auto z = cusp_growth_scan([](cplx) { return cplx(0); }, {0, 0}, {IntegerMatrix::identity()}, {1, 2, 3});
    CHECK(z.rows[0].degenerate);
    CHECK(z.any_flagged);
}
