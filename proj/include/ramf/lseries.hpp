#pragma once

#include "ramf/arithmetic.hpp"
#include "ramf/expansion.hpp"
#include "ramf/modular_group.hpp"
#include "ramf/test_function.hpp"

namespace ramf {

struct LValue {
    cplx value = 0.0;
    double abs_tail = 0;
    int terms_used = 0;
};

// int_0^inf y^k phi(y) e^{-s y} dy
cplx laplace(const TestFunction& phi, int k, cplx s);
// Same integral by adaptive quadrature only.
cplx laplace_quadrature(const TestFunction& phi, int k, cplx s);

// Bound on the coefficient sum beyond nmax; infinite when it does not converge.
double lseries_tail_bound(const QExpansion& e, const TestFunction& phi);
bool in_test_space(const QExpansion& e, const TestFunction& phi);

LValue lseries_series(const QExpansion& e, const TestFunction& phi);
LValue lseries_integral(const Evaluator& F, const TestFunction& phi);
LValue lseries_integral(const QExpansion& e, const TestFunction& phi);

// z -> sum_{mu mod D} conj(chi(mu)) F((z + mu) / D)
Evaluator twist_evaluator(const Evaluator& F, const DirichletCharacter& chi);

struct FEResult {
    cplx lhs = 0.0;
    cplx rhs = 0.0;
    double residual = 0;
    // series-path values when expansions were supplied, otherwise NaN
    cplx lhs_series{NAN, NAN};
    cplx rhs_series{NAN, NAN};
};

// L_{F_chi}(phi) against sign * i^{r-s} chi(-N) psi(D) N^{-(w-2)/2} L_{G_chibar}(phi|_{2-w} W_N).
FEResult functional_equation(const QExpansion& F, const QExpansion& G, Weights w, i64 N, i64 D,
                             const DirichletCharacter& chi, const DirichletCharacter& psi, const TestFunction& phi,
                             cplx sign = 1.0, bool with_series = true);
FEResult functional_equation(const Evaluator& F, const Evaluator& G, Weights w, i64 N, i64 D,
                             const DirichletCharacter& chi, const DirichletCharacter& psi, const TestFunction& phi,
                             cplx sign = 1.0);
double functional_equation_residual(const QExpansion& F, const QExpansion& G, Weights w, i64 N, i64 D,
                                    const DirichletCharacter& chi, const DirichletCharacter& psi,
                                    const TestFunction& phi);
double functional_equation_residual(const Evaluator& F, const Evaluator& G, Weights w, i64 N, i64 D,
                                    const DirichletCharacter& chi, const DirichletCharacter& psi,
                                    const TestFunction& phi);

LValue lseries_u(const BiExpansion& e, const TestFunction& phi, double u);
// int_0^inf F((i + u) y) phi(y sqrt(u^2 + 1)) dy
LValue lseries_u_integral(const Evaluator& F, const TestFunction& phi, double u);

// L_{F_chi}(phi; u) against (i-u)^r (-i-u)^s chi(-N) psi(D) (u^2+1)^{-w/2} N^{-(w-2)/2} L_{G_chibar}(phi|W_N; -u).
FEResult functional_equation_u(const BiExpansion& F, const BiExpansion& G, Weights w, i64 N, i64 D,
                               const DirichletCharacter& chi, const DirichletCharacter& psi, const TestFunction& phi,
                               double u, bool with_series = true);
double functional_equation_residual_u(const BiExpansion& F, const BiExpansion& G, Weights w, i64 N, i64 D,
                                      const DirichletCharacter& chi, const DirichletCharacter& psi,
                                      const TestFunction& phi, double u);

}  // namespace ramf
