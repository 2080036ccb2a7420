#include "ramf/verifier.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace ramf {

double modularity_residual(const Evaluator& F, Weights w, const IntegerMatrix& gamma, const DirichletCharacter& chi,
                           const std::vector<cplx>& points) {
    i64 N = chi.modulus();
    if (!gamma.in_gamma0(N)) throw InvalidArgument("modularity_residual: matrix is not in Gamma0(" + std::to_string(N) + ")");
    RealMatrix g(gamma);
    double worst = 0;
    for (cplx z : points) {
        if (!(z.imag() > 0)) throw DomainError("modularity_residual: points must lie in the upper half-plane");
        cplx j = j_factor(g, z);
        cplx fz = F(z);
        cplx expect = chi(gamma.d) * ipow(j, w.r) * ipow(std::conj(j), w.s) * fz;
        worst = std::max(worst, std::abs(F(g.act(z)) - expect) / (1 + std::abs(fz)));
    }
    return worst;
}

double fricke_relation_residual(const Evaluator& F, const Evaluator& G, Weights w, i64 N, i64 D,
                                const DirichletCharacter& chi, const DirichletCharacter& psi,
                                const std::vector<cplx>& points) {
    if (gcd(D, N) != 1) throw InvalidArgument("fricke_relation_residual: gcd(D, N) must be 1");
    if (chi.modulus() != D || psi.modulus() != N) throw InvalidArgument("fricke_relation_residual: character moduli");
    Evaluator lhs = double_slash(twist_evaluator(F, chi), w, fricke_matrix(N));
    Evaluator rhs = twist_evaluator(G, conjugate(chi));
    cplx k = chi(-N) * psi(D);
    double worst = 0;
    for (cplx z : points) worst = std::max(worst, std::abs(lhs(z) - k * rhs(z)));
    return worst;
}

double fricke_relation_residual(const QExpansion& F, const QExpansion& G, Weights w, i64 N, i64 D,
                                const DirichletCharacter& chi, const DirichletCharacter& psi,
                                const std::vector<cplx>& points) {
    if (gcd(D, N) != 1) throw InvalidArgument("fricke_relation_residual: gcd(D, N) must be 1");
    if (chi.modulus() != D || psi.modulus() != N) throw InvalidArgument("fricke_relation_residual: character moduli");
    Evaluator lhs = double_slash(evaluator(twist(F, chi)), w, fricke_matrix(N));
    QExpansion Gc = twist(G, conjugate(chi));
    cplx k = chi(-N) * psi(D);
    double worst = 0;
    for (cplx z : points) worst = std::max(worst, std::abs(lhs(z) - k * evaluate(Gc, z).value));
    return worst;
}

VanishingReport vanishing_certificate(const QExpansion& e) {
    // P_n(y) = sum_k (a + b) y^k, Q_n(y) = (2 pi i n / M) sum_k (a - b) y^k
    std::map<int, bool> pz, qz;
    bool all_zero = true, n0_nonzero = false;
    for (auto& [key, c] : e.terms()) {
        auto [k, n] = key;
        (void)k;
        pz.try_emplace(n, true);
        qz.try_emplace(n, true);
        if (c.a != cplx(0.0) || c.b != cplx(0.0)) all_zero = false;
        if (c.a + c.b != cplx(0.0)) pz[n] = false;
        if (n != 0 && c.a - c.b != cplx(0.0)) qz[n] = false;
        if (n == 0 && (c.a != cplx(0.0) || c.b != cplx(0.0))) n0_nonzero = true;
    }
    VanishingReport r;
    for (auto& [n, z] : pz)
        if (!z) r.nonzero_P.push_back(n);
    for (auto& [n, z] : qz)
        if (!z) r.nonzero_Q.push_back(n);
    r.vanishes = r.nonzero_P.empty() && r.nonzero_Q.empty();
    r.coefficients_zero = all_zero;
    bool p0_zero = !pz.count(0) || pz[0];
    r.n0_ambiguity = p0_zero && n0_nonzero;
    return r;
}

namespace {

std::vector<i64> admissible_D(i64 N, i64 max_D, bool& complete) {
    std::vector<i64> out{1};
    i64 top = N * N - 1;
    complete = top <= max_D;
    for (i64 D = 2; D <= std::min(top, max_D); ++D)
        if (gcd(D, N) == 1) out.push_back(D);
    return out;
}

std::vector<cplx> fricke_points(i64 N) {
    double h = 1 / std::sqrt(static_cast<double>(N));
    return {cplx(0, h), cplx(0.25, h), cplx(-0.4, 1.2 * h)};
}

// A point where both z and gamma z sit at height 1/|c|.
cplx balanced_point(const IntegerMatrix& g) {
    if (g.c == 0) return cplx(0.3, 1.0);
    double c = static_cast<double>(g.c), d = static_cast<double>(g.d);
    return cplx(-d / c, 1 / std::abs(c));
}

// Fourier modes of a double expansion at height y, keyed by x-frequency m - n.
std::map<int, cplx> expansion_modes(const BiExpansion& e, double y) {
    std::map<int, cplx> out;
    for (auto& [key, a] : e.terms()) {
        auto [j, m, n] = key;
        out[m - n] += a * std::pow(y, j) * std::exp(-2 * kPi * (m + n) * y / e.M());
    }
    return out;
}

int pow2_at_least(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

struct ModeCheck {
    std::vector<Witness> all, failed;
    int checked = 0;
    double worst = 0;
};

// Compares the x-Fourier modes of H with those of the expansion G at each height.
void compare_modes(const Evaluator& H, const BiExpansion& G, cplx factor, const std::vector<double>& ys, double tol,
                   const std::string& name, ModeCheck& mc) {
    int top = G.mmax() + G.N0p();
    int nx = pow2_at_least(std::max(64, 8 * (top + 1)));
    double M = G.M();
    for (double y : ys) {
        std::vector<cplx> samples(static_cast<std::size_t>(nx));
        for (int j = 0; j < nx; ++j) samples[static_cast<std::size_t>(j)] = H(cplx(M * (static_cast<double>(j) / nx - 0.5), y));
        std::map<int, cplx> gm = expansion_modes(G, y);
        double scale = 0;
        for (auto& [nu, c] : gm) scale = std::max(scale, std::abs(factor * c));
        double side_worst = 0;
        for (int nu = -top; nu <= top; ++nu) {
            cplx h = 0.0;
            for (int j = 0; j < nx; ++j) {
                double x = M * (static_cast<double>(j) / nx - 0.5);
                h += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -2 * kPi * nu * x / M);
            }
            h /= static_cast<double>(nx);
            cplx g = gm.count(nu) ? factor * gm[nu] : cplx(0.0);
            double mag = std::max(std::abs(h), std::abs(g));
            if (mag < 1e-6 * scale || mag == 0) continue;
            ++mc.checked;
            double rel = std::abs(h - g) / mag;
            side_worst = std::max(side_worst, rel);
            if (rel >= tol) {
                Witness w{name, rel, 1, 0, -1, 0, nu, y, "Fourier mode " + std::to_string(nu)};
                mc.failed.push_back(w);
            }
        }
        mc.all.push_back({name, side_worst, 1, 0, -1, 0, 0, y, "worst mode at this height"});
        mc.worst = std::max(mc.worst, side_worst);
    }
}

std::vector<double> mode_heights(i64 N, int nmax) {
    // F1 || W_N on [-1/2, 1/2] + iy only samples F1 at heights >= 4y/N.
    double y0 = 1.465 * static_cast<double>(N) / (nmax + 1);
    std::vector<double> ys;
    for (double y : {y0, 4 * y0, 1.0})
        if (y <= 1.0 && (ys.empty() || y > ys.back() * 1.01)) ys.push_back(y);
    return ys;
}

void add_residual(Verdict& v, Witness w, double tol) {
    v.residuals.push_back(w);
    if (!(w.residual < tol)) v.witnesses.push_back(w);
}

template <class Form>
void phase_b(Verdict& v, const Form& F1, const Form& F2, Weights w, i64 N, const DirichletCharacter& psi,
             const std::vector<i64>& Ds) {
    const ConverseConfig& cfg = v.config;
    Evaluator e1 = evaluator(F1), e2 = evaluator(F2);
    auto pts = fricke_points(N);
    for (i64 D : Ds) {
        for (auto& chi : character_group(D)) {
            double r = fricke_relation_residual(e1, e2, w, N, D, chi, psi, pts);
            v.max_residual_B = std::max(v.max_residual_B, r);
            add_residual(v, {"fricke", r, D, chi.index(), -1, 0, 0, 0, ""}, cfg.tol_B);
        }
    }
    for (auto& g : gamma0_generators(N)) {
        cplx z = balanced_point(g);
        double r = modularity_residual(e1, w, g, psi, {z});
        v.max_residual_B = std::max(v.max_residual_B, r);
        char buf[96];
        std::snprintf(buf, sizeof buf, "(%lld %lld; %lld %lld)", static_cast<long long>(g.a), static_cast<long long>(g.b),
                      static_cast<long long>(g.c), static_cast<long long>(g.d));
        add_residual(v, {"modularity", r, 1, 0, -1, 0, 0, z.imag(), buf}, cfg.tol_B);
    }
    BiExpansion b1, b2;
    if constexpr (std::is_same_v<Form, QExpansion>) {
        b1 = to_bi(F1);
        b2 = to_bi(F2);
    } else {
        b1 = F1;
        b2 = F2;
    }
    if (b1.M() != 1 || b2.M() != 1) {
        v.warnings.push_back("coefficient-resolved Fricke check skipped: expansions must have M = 1");
        return;
    }
    ModeCheck mc;
    RealMatrix W = fricke_matrix(N);
    double sgn = w.w() % 2 == 0 ? 1.0 : -1.0;
    compare_modes(double_slash(e1, w, W), b2, 1.0, mode_heights(N, b1.mmax()), cfg.tol_modes, "fricke_modes_F2", mc);
    compare_modes(double_slash(e2, w, W), b1, sgn, mode_heights(N, b2.mmax()), cfg.tol_modes, "fricke_modes_F1", mc);
    v.modes_checked = mc.checked;
    v.max_mode_residual = mc.worst;
    for (auto& x : mc.all) v.residuals.push_back(x);
    for (auto& x : mc.failed) v.witnesses.push_back(x);
}

void check_family(const std::vector<TestFunction>& family, const ConverseConfig& cfg) {
    if (family.empty()) throw InvalidArgument("converse check: the test-function family is empty");
    if (!covers(family, cfg.cover_lo, cfg.cover_hi))
        throw PreconditionError("converse check: the family does not cover the configured interval");
}

}  // namespace

Verdict converse_check(const QExpansion& F1, const QExpansion& F2, Weights w, i64 N, const DirichletCharacter& psi,
                       const std::vector<TestFunction>& family, const ConverseConfig& config) {
    if (!F1.growth() || !F2.growth()) throw PreconditionError("converse check: both expansions need a declared growth bound");
    if (psi.modulus() != N) throw InvalidArgument("converse check: psi must have modulus N");
    check_family(family, config);
    Verdict v;
    v.config = config;
    v.family_size = family.size();
    v.D_values = admissible_D(N, config.max_D, v.complete);
    if (!v.complete) v.warnings.push_back("D range capped at " + std::to_string(config.max_D));

    QExpansion R1 = raise(F1, w.r), R2 = raise(F2, w.r);
    QExpansion L1 = lower(F1, w.s), L2 = lower(F2, w.s);
    for (i64 D : v.D_values) {
        for (auto& chi : character_group(D)) {
            for (std::size_t i = 0; i < family.size(); ++i) {
                const TestFunction& phi = family[i];
                struct Eq {
                    const char* name;
                    const QExpansion *a, *b;
                    double sign;
                } eqs[] = {{"converse1a", &F1, &F2, 1.0},
                           {"converse1b", &R1, &R2, config.sign_b},
                           {"converse1c", &L1, &L2, config.sign_b}};
                for (auto& eq : eqs) {
                    double r = functional_equation(*eq.a, *eq.b, w, N, D, chi, psi, phi, eq.sign, false).residual;
                    v.max_residual = std::max(v.max_residual, r);
                    add_residual(v, {eq.name, r, D, chi.index(), static_cast<int>(i), 0, 0, 0, ""}, config.tol_A);
                }
            }
        }
    }
    if (config.phase_b) phase_b(v, F1, F2, w, N, psi, v.D_values);
    v.passed = v.witnesses.empty();
    return v;
}

Verdict converse_check_u(const BiExpansion& F1, const BiExpansion& F2, Weights w, i64 N,
                         const DirichletCharacter& psi, const std::vector<TestFunction>& family,
                         const std::vector<double>& u_grid, const ConverseConfig& config) {
    if (psi.modulus() != N) throw InvalidArgument("converse check: psi must have modulus N");
    if (u_grid.empty()) throw InvalidArgument("converse check: empty u grid");
    check_family(family, config);
    Verdict v;
    v.config = config;
    v.family_size = family.size();
    v.D_values = admissible_D(N, config.max_D, v.complete);
    if (!v.complete) v.warnings.push_back("D range capped at " + std::to_string(config.max_D));
    if (u_grid.size() == 1)
        v.warnings.push_back("a single-u grid is logically insufficient: the equation is required for every real u");

    std::vector<double> us = u_grid;
    std::stable_sort(us.begin(), us.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    for (double u : us) {
        for (i64 D : v.D_values) {
            for (auto& chi : character_group(D)) {
                for (std::size_t i = 0; i < family.size(); ++i) {
                    double r = functional_equation_u(F1, F2, w, N, D, chi, psi, family[i], u, false).residual;
                    v.max_residual = std::max(v.max_residual, r);
                    add_residual(v, {"conv1", r, D, chi.index(), static_cast<int>(i), u, 0, 0, ""}, config.tol_A);
                }
            }
        }
    }
    if (config.phase_b) phase_b(v, F1, F2, w, N, psi, v.D_values);
    v.passed = v.witnesses.empty();
    return v;
}

GrowthReport cusp_growth_scan(const Evaluator& F, Weights w, const std::vector<IntegerMatrix>& gammas,
                              const std::vector<double>& y_grid, int nx) {
    for (std::size_t i = 1; i < y_grid.size(); ++i)
        if (!(y_grid[i] > y_grid[i - 1])) throw InvalidArgument("cusp_growth_scan: y grid must be increasing");
    GrowthReport rep;
    rep.y_grid = y_grid;
    for (auto& g : gammas) {
        Evaluator G = double_slash(F, w, RealMatrix(g));
        GrowthRow row;
        row.gamma = g;
        bool any = false;
        for (double y : y_grid) {
            double mx = 0;
            for (int j = 0; j < nx; ++j) mx = std::max(mx, std::abs(G(cplx(static_cast<double>(j) / nx, y))));
            row.log_max.push_back(mx > 0 ? std::log(mx) : -INFINITY);
            if (mx > 0) any = true;
        }
        if (!any) {
            row.degenerate = true;
            rep.any_flagged = true;
            rep.rows.push_back(row);
            continue;
        }
        std::vector<double> ys, ls;
        for (std::size_t i = 0; i < y_grid.size(); ++i)
            if (std::isfinite(row.log_max[i])) {
                ys.push_back(y_grid[i]);
                ls.push_back(row.log_max[i]);
            }
        // log max|G| ~ A y + p log y + c; the log y column absorbs polynomial growth
        int cols = ys.size() >= 4 ? 3 : ys.size() >= 2 ? 2 : 1;
        Eigen::MatrixXd X(ys.size(), cols);
        Eigen::VectorXd L(ys.size());
        for (std::size_t i = 0; i < ys.size(); ++i) {
            X(i, 0) = 1;
            if (cols > 1) X(i, 1) = ys[i];
            if (cols > 2) X(i, 2) = std::log(ys[i]);
            L(i) = ls[i];
        }
        Eigen::VectorXd beta = X.colPivHouseholderQr().solve(L);
        row.intercept = beta(0);
        row.A = cols > 1 ? beta(1) : 0;
        row.power = cols > 2 ? beta(2) : 0;
        std::size_t m = y_grid.size();
        if (m >= 2 && std::isfinite(row.log_max[m - 1]) && std::isfinite(row.log_max[m - 2])) {
            double slope = (row.log_max[m - 1] - row.log_max[m - 2]) / (y_grid[m - 1] - y_grid[m - 2]);
            row.super_exponential = slope > 2 * std::abs(row.A) + 1;
        }
        if (row.super_exponential) rep.any_flagged = true;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace ramf
