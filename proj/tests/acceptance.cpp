#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "ramf/eisenstein.hpp"
#include "ramf/json_io.hpp"
#include "ramf/lseries.hpp"
#include "ramf/special.hpp"
#include "ramf/verifier.hpp"

using namespace ramf;

namespace {

std::string fixture(const std::string& name) { return std::string(RAMF_FIXTURE_DIR) + "/" + name; }

QExpansion load(const std::string& name) { return qexpansion_from_json(read_json_file(fixture(name))); }

EisensteinSpec real_analytic(i64 N, int chi, int r, int s, i64 bound) {
    EisensteinSpec e;
    e.N = N;
    e.chi = character(N, chi);
    e.r = r;
    e.s = s;
    e.bound = bound;
    return e;
}

QExpansion random_expansion(std::mt19937_64& rng, int terms, int nmax = 8) {
    std::uniform_int_distribution<int> K(-2, 1), Nn(0, nmax);
    std::normal_distribution<double> G;
    QExpansion e(1, 0, nmax);
    for (int t = 0; t < terms; ++t) e.add(K(rng), Nn(rng), {G(rng), G(rng)}, {G(rng), G(rng)});
    return e;
}

TestFunction random_linear(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.3, 1.0), C(-1, 1);
    double a = U(rng), b = a + U(rng), c = b + U(rng);
    return TestFunction({Piece{a, b, {{0, C(rng)}, {1, C(rng)}}}, Piece{b, c, {{0, C(rng)}, {1, cplx(C(rng), C(rng))}}}});
}

IntegerMatrix random_sl2z(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> U(-2, 2);
    IntegerMatrix g = IntegerMatrix::identity();
    for (int i = 0; i < 3; ++i) g = g * IntegerMatrix{1, U(rng), 0, 1} * IntegerMatrix::S();
    return g;
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome operator_algebra() {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> J(-3, 3), Mn(0, 5), R(-3, 4), Side(0, 1), Mper(1, 3);
    double worst = 0, worst_lap = 0;
    for (int t = 0; t < 1000; ++t) {
        int j = J(rng), m = Mn(rng), r = R(rng), s = R(rng), M = Mper(rng);
        bool holo = Side(rng) == 0;
        QExpansion e(M, 0, 5);
        e.add(j, m, holo ? cplx(1) : cplx(0), holo ? cplx(0) : cplx(1));
        double mh = holo ? double(m) / M : 0, ma = holo ? 0 : double(m) / M;
        QExpansion er(M, 0, 5), el(M, 0, 5);
        auto put = [&](QExpansion& x, int k, cplx v) { x.add(k, m, holo ? v : cplx(0), holo ? cplx(0) : v); };
        put(er, j, r + j);
        put(er, j + 1, -4 * kPi * mh);
        put(el, j, s + j);
        put(el, j + 1, -4 * kPi * ma);
        worst = std::max({worst, max_coef_diff(raise(e, r), er), max_coef_diff(lower(e, s), el)});
        auto a = add(scale(lower(raise(e, r), s - 1), -1.0), scale(e, double(r) * (s - 1)));
        auto b = add(scale(raise(lower(e, s), r - 1), -1.0), scale(e, double(s) * (r - 1)));
        worst_lap = std::max({worst_lap, max_coef_diff(a, b), max_coef_diff(a, laplacian(e, {r, s}))});
    }
    return {worst < 1e-12 && worst_lap < 1e-12, fmt("monomial error %.3g, Laplacian order mismatch %.3g", worst, worst_lap)};
}

Outcome group_action() {
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> X(-1, 1), Y(0.4, 2);
    Evaluator F = [](cplx z) { return std::exp(kI * z) * (1.0 + z.imag()) + z * std::conj(z) * 0.3; };
    Weights w{2, 1};
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        IntegerMatrix g = random_sl2z(rng), m = random_sl2z(rng);
        cplx z(X(rng), Y(rng));
        cplx lhs = double_slash(F, w, RealMatrix(g * m))(z);
        cplx rhs = double_slash(double_slash(F, w, RealMatrix(g)), w, RealMatrix(m))(z);
        worst = std::max(worst, std::abs(lhs - rhs) / (1 + std::abs(lhs)));
    }
    return {worst < 1e-10, fmt("max residual %.3g over 100 triples", worst)};
}

Outcome gauss_sums() {
    double worst_tau = 0, worst_sum = 0;
    int primitive = 0;
    for (i64 D = 1; D <= 24; ++D)
        for (auto& chi : character_group(D)) {
            if (D <= 12 && is_primitive(chi)) {
                ++primitive;
                worst_tau = std::max(worst_tau, std::abs(std::norm(gauss_sum(chi, 1)) - double(D)));
            }
            if (!chi.is_trivial()) {
                cplx s = 0;
                for (i64 n = 0; n < D; ++n) s += chi(n);
                worst_sum = std::max(worst_sum, std::abs(s));
            }
        }
    return {worst_tau < 1e-10 && worst_sum < 1e-12,
            fmt("%g primitive characters, ||tau|^2 - D| %.3g, character sums %.3g", primitive, worst_tau, worst_sum)};
}

Outcome diagonal_relation() {
    double worst = 0;
    for (i64 N : {1, 3, 4}) {
        EisensteinSeries A(real_analytic(N, 0, 1, 1, 600));
        EisensteinSpec nh = real_analytic(N, 0, 2, 0, 600);
        nh.kind = EisKind::NonHolomorphic;
        EisensteinSeries E(nh);
        for (cplx z : {kI, cplx(1.0 / 3, 2)}) {
            cplx k = kI / z.imag() * factorial(2) / std::pow(2 * kPi * kI, 3);
            worst = std::max(worst, std::abs(A(z) - k * E(z)));
        }
    }
    return {worst < 1e-8, fmt("max residual %.3g", worst)};
}

Outcome differential_identities() {
    double worst = 0;
    for (i64 N : {1, 4})
        for (int which = 1; which <= 4; ++which)
            worst = std::max(worst, differential_identity_residual(real_analytic(N, 0, 1, 1, 400), kI, which, 1e-5));
    return {worst < 1e-5, fmt("max residual %.3g", worst)};
}

Outcome laplacian_eigen() {
    double r11 = laplacian_eigen_residual(real_analytic(1, 0, 1, 1, 400), kI);
    double r22 = laplacian_eigen_residual(real_analytic(1, 0, 2, 2, 400), kI);
    double r21 = laplacian_eigen_residual(real_analytic(4, 1, 2, 1, 400), kI);
    double worst = std::max({r11, r21, r22});
    return {worst < 1e-4, fmt("(1,1) %.3g, (2,1) at level four %.3g, (2,2) %.3g", r11, r21, r22)};
}

Outcome modularity() {
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<int> U(-10, 10);
    double worst = 0;
    for (i64 N : {1, 2, 4}) {
        EisensteinSeries A(real_analytic(N, 0, 1, 1, 600));
        int done = 0;
        while (done < 20) {
            IntegerMatrix g{U(rng), U(rng), U(rng), U(rng)};
            if (!g.in_gamma0(N)) continue;
            ++done;
            worst = std::max(worst, modularity_residual(A, {1, 1}, g, trivial_character(N), {kI}));
        }
    }
    return {worst < 1e-4, fmt("max residual %.3g over 60 matrices", worst)};
}

Outcome lseries_paths() {
    std::mt19937_64 rng(108);
    double worst = 0;
    for (int t = 0; t < 10; ++t) {
        auto e = random_expansion(rng, 15);
        for (int f = 0; f < 3; ++f) {
            auto phi = random_linear(rng);
            worst = std::max(worst, std::abs(lseries_series(e, phi).value - lseries_integral(evaluator(e), phi).value));
        }
    }
    auto E = load("e11.json");
    auto phi = TestFunction::indicator(0.5, 2);
    double fix = std::abs(lseries_series(E, phi).value - lseries_integral(E, phi).value);
    return {worst < 1e-9 && fix < 1e-6, fmt("random %.3g, level-one fixture %.3g", worst, fix)};
}

Outcome twist_identity() {
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> X(-1, 1), Y(0.3, 1.5);
    auto e = random_expansion(rng, 12);
    double worst = 0;
    for (i64 D : {3, 4, 5})
        for (auto& chi : character_group(D)) {
            auto T = twist(e, chi);
            auto F = evaluator(e);
            for (int i = 0; i < 20; ++i) {
                cplx z(X(rng), Y(rng)), sum = 0;
                for (i64 mu = 0; mu < D; ++mu) sum += std::conj(chi(mu)) * F((z + double(mu)) / double(D));
                worst = std::max(worst, std::abs(evaluate(T, z).value - sum));
            }
        }
    return {worst < 1e-10, fmt("max residual %.3g", worst)};
}

Outcome functional_equation_level_one() {
    auto E = load("e11.json");
    auto one = trivial_character(1);
    auto family = bump_family(0.25, 4, 8);
    double d1 = 0, d4 = 0;
    for (auto& phi : family) {
        d1 = std::max(d1, functional_equation_residual(E, E, {1, 1}, 1, 1, one, one, phi));
        for (auto& chi : character_group(4))
            d4 = std::max(d4, functional_equation_residual(E, E, {1, 1}, 1, 4, chi, one, phi));
    }
    return {d1 < 1e-6 && d4 < 1e-4, fmt("D=1 %.3g, D=4 %.3g", d1, d4)};
}

Outcome auxiliary_variable() {
    std::mt19937_64 rng(111);
    double red = 0, paths = 0, fe = 0;
    for (int t = 0; t < 10; ++t) {
        auto e = random_expansion(rng, 10);
        auto phi = random_linear(rng);
        red = std::max(red, std::abs(lseries_u(to_bi(e), phi, 0).value - lseries_series(e, phi).value));
        for (double u : {0.5, 1.0})
            paths = std::max(paths, std::abs(lseries_u(to_bi(e), phi, u).value -
                                             lseries_u_integral(evaluator(e), phi, u).value));
    }
    auto B = to_bi(load("e11.json"));
    auto one = trivial_character(1);
    for (auto& phi : bump_family(0.25, 4, 8))
        for (double u : {0.0, 0.5, 1.0})
            fe = std::max(fe, functional_equation_residual_u(B, B, {1, 1}, 1, 1, one, one, phi, u));
    return {red < 1e-10 && paths < 1e-8 && fe < 1e-6,
            fmt("u=0 reduction %.3g, series vs integral %.3g, functional equation %.3g", red, paths, fe)};
}

Outcome converse_pipeline() {
    auto E = load("e11.json");
    auto one = trivial_character(1);
    auto family = bump_family(0.25, 4, 8);
    ConverseConfig cfg;
    cfg.cover_lo = 0.25;
    cfg.cover_hi = 4;
    auto base = converse_check(E, E, {1, 1}, 1, one, family, cfg);
    int total = 0, caught = 0, named = 0, via_phi = 0;
    std::string missed;
    for (auto& [key, c] : E.terms()) {
        for (int side = 0; side < 2; ++side) {
            cplx v = side == 0 ? c.a : c.b;
            if (v == cplx(0.0)) continue;
            ++total;
            QExpansion P = E;
            P.clear_growth();
            P.set(key.first, key.second, side == 0 ? 1.1 * c.a : c.a, side == 1 ? 1.1 * c.b : c.b);
            P.declare_growth(P.fitted_growth());
            auto v2 = converse_check(E, P, {1, 1}, 1, one, family, cfg);
            if (v2.passed) {
                missed += " (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
                continue;
            }
            ++caught;
            if (!v2.witnesses.empty() && v2.witnesses.front().D == 1 && v2.witnesses.front().chi == 0) ++named;
            if (!v2.witnesses.empty() && v2.witnesses.front().phi >= 0) ++via_phi;
        }
    }
    auto flipped = cfg;
    flipped.sign_b = 1;
    bool sign_fails = !converse_check(E, E, {1, 1}, 1, one, family, flipped).passed;
    bool ok = base.passed && caught == total && named == total && sign_fails;
    std::string d = std::string("base ") + (base.passed ? "PASS" : "FAIL") + fmt(" (max residual %.3g); ", base.max_residual) +
        fmt("%g/%g perturbations FAIL", caught, total) + fmt(" with (D, chi) named in %g, test function named in %g; ", named, via_phi) +
        "flipped sign " + (sign_fails ? "FAIL" : "PASS");
    if (!missed.empty()) d += "; undetected:" + missed;
    return {ok, d};
}

Outcome extraction() {
    std::mt19937_64 rng(113);
    std::uniform_int_distribution<int> K(-1, 1), Nn(0, 6);
    std::normal_distribution<double> G;
    double worst = 0;
    for (int t = 0; t < 10; ++t) {
        QExpansion e(1, 0, 6), canon(1, 0, 6);
        for (int i = 0; i < 10; ++i) e.add(K(rng), Nn(rng), {G(rng), G(rng)}, {G(rng), G(rng)});
        for (auto& [key, c] : e.terms())
            canon.add(key.first, key.second, key.second == 0 ? c.a + c.b : c.a, key.second == 0 ? 0.0 : c.b);
        auto x = extract_expansion(evaluator(e), 1, {-1, 0, 1}, 0, 6, {0.05, 0.07, 0.1, 0.14});
        worst = std::max(worst, max_coef_diff(x.expansion, canon));
    }
    EisensteinSeries A(real_analytic(1, 0, 1, 1, 400));
    auto x = extract_expansion(A, 1, {-2, -1, 1}, 0, 8, {0.1, 0.13, 0.17, 0.22});
    double eis = max_coef_diff(x.expansion, level1_expansion(1, 8));
    return {worst < 1e-8 && eis < 1e-6, fmt("round trip %.3g, truncated series vs expansion %.3g", worst, eis)};
}

Outcome determinism() {
    auto cli_out = [](std::vector<std::string> args) {
        std::ostringstream o, e;
        int code = cli::run(args, o, e);
        return std::to_string(code) + "\n" + o.str();
    };
    std::vector<std::vector<std::string>> runs{
        {"eisenstein", "--level", "4", "--weights", "2,2", "--z", "0.2+0.9i", "--random-gammas", "5", "--seed", "9",
         "--identities"},
        {"check-converse", "--F1", fixture("e11.json"), "--F2", fixture("e11.json"), "--level", "1", "--family-lo",
         "0.25", "--family-hi", "4"},
        {"lseries", "--form", fixture("e11.json"), "--phi", fixture("bump.json"), "--u", "0.5"}};
    int identical = 0, total = 0;
    for (auto& args : runs) {
        auto t1 = args, t4 = args;
        t1.insert(t1.end(), {"--threads", "1"});
        t4.insert(t4.end(), {"--threads", "4"});
        std::string a = cli_out(args), b = cli_out(args), c = cli_out(t1), d = cli_out(t4);
        total += 3;
        identical += (a == b) + (a == c) + (c == d);
    }
    return {identical == total, fmt("%g/%g output pairs byte-identical (repeat, 1 vs 4 threads)", identical, total)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {"operator algebra", operator_algebra},
        {"group action", group_action},
        {"Gauss sums", gauss_sums},
        {"Eisenstein diagonal relation", diagonal_relation},
        {"derivative identities", differential_identities},
        {"Laplacian eigenvalue", laplacian_eigen},
        {"modularity of the truncated series", modularity},
        {"L-series dual paths", lseries_paths},
        {"twist identity", twist_identity},
        {"functional equation at level one", functional_equation_level_one},
        {"auxiliary variable", auxiliary_variable},
        {"converse pipeline", converse_pipeline},
        {"round-trip extraction", extraction},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > 60) {
            o.pass = false;
            o.detail += " (over the time budget)";
        }
        std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
