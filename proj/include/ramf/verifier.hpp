#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ramf/expansion.hpp"
#include "ramf/lseries.hpp"
#include "ramf/modular_group.hpp"

namespace ramf {

struct Witness {
    std::string test;
    double residual = 0;
    i64 D = 1;
    int chi = 0;
    int phi = -1;   // index into the family, -1 when not applicable
    double u = 0;
    int mode = 0;   // Fourier mode for coefficient-resolved checks
    double y = 0;   // height for coefficient-resolved checks
    std::string detail;
};

struct ConverseConfig {
    double tol_A = 1e-5;
    double tol_B = 1e-4;
    // relative tolerance of the Fourier-mode comparison in phase B
    double tol_modes = 1e-3;
    i64 max_D = 24;
    // sign in front of the raised and lowered equations
    double sign_b = -1;
    double cover_lo = 0.125;
    double cover_hi = 8;
    bool phase_b = true;
};

struct Verdict {
    bool passed = false;
    double max_residual = 0;    // functional-equation residuals
    double max_residual_B = 0;  // Fricke and modularity residuals
    double max_mode_residual = 0;
    std::vector<Witness> witnesses;  // failures, in evaluation order
    std::vector<Witness> residuals;  // every computed residual
    ConverseConfig config;
    std::vector<std::string> warnings;
    // false when the D range was capped below N^2 - 1
    bool complete = true;
    std::vector<i64> D_values;
    std::size_t family_size = 0;
    int modes_checked = 0;
};

// max over points of |F(g z) - chi(d) j^r jbar^s F(z)| / (1 + |F(z)|); N = chi.modulus().
double modularity_residual(const Evaluator& F, Weights w, const IntegerMatrix& gamma, const DirichletCharacter& chi,
                           const std::vector<cplx>& points);

// max over points of |(F_chi ||_{r,s} W_N)(z) - chi(-N) psi(D) G_chibar(z)|
double fricke_relation_residual(const QExpansion& F, const QExpansion& G, Weights w, i64 N, i64 D,
                                const DirichletCharacter& chi, const DirichletCharacter& psi,
                                const std::vector<cplx>& points);
double fricke_relation_residual(const Evaluator& F, const Evaluator& G, Weights w, i64 N, i64 D,
                                const DirichletCharacter& chi, const DirichletCharacter& psi,
                                const std::vector<cplx>& points);

struct VanishingReport {
    bool vanishes = false;           // every P_n and Q_n is the zero polynomial
    bool coefficients_zero = false;  // every stored coefficient is exactly zero
    bool n0_ambiguity = false;       // P_0 = 0 while some n = 0 coefficient is not
    std::vector<int> nonzero_P;
    std::vector<int> nonzero_Q;
};

VanishingReport vanishing_certificate(const QExpansion& e);

Verdict converse_check(const QExpansion& F1, const QExpansion& F2, Weights w, i64 N, const DirichletCharacter& psi,
                       const std::vector<TestFunction>& family, const ConverseConfig& config = {});

Verdict converse_check_u(const BiExpansion& F1, const BiExpansion& F2, Weights w, i64 N,
                         const DirichletCharacter& psi, const std::vector<TestFunction>& family,
                         const std::vector<double>& u_grid, const ConverseConfig& config = {});

struct Extraction {
    QExpansion expansion;
    std::map<int, double> residuals;  // per Fourier mode
    double max_residual = 0;
};

Extraction extract_expansion(const Evaluator& F, int M, const std::set<int>& S, int n0, int nmax,
                             const std::vector<double>& y_samples);

struct GrowthRow {
    IntegerMatrix gamma;
    double A = 0;
    double power = 0;  // fitted exponent of y
    double intercept = 0;
    bool super_exponential = false;
    bool degenerate = false;
    std::vector<double> log_max;  // per y
};

struct GrowthReport {
    std::vector<double> y_grid;
    std::vector<GrowthRow> rows;
    bool any_flagged = false;
};

GrowthReport cusp_growth_scan(const Evaluator& F, Weights w, const std::vector<IntegerMatrix>& gammas,
                              const std::vector<double>& y_grid, int nx = 32);

}  // namespace ramf
