#pragma once

#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "ramf/arithmetic.hpp"
#include "ramf/common.hpp"
#include "ramf/modular_group.hpp"

namespace ramf {

// |coefficient at n| <= kappa * exp(C |n|^{1/t})
struct Growth {
    double C = 0;
    double t = 2;
    double kappa = 1;
};

struct Coef {
    cplx a = 0.0;  // holomorphic side, multiplies q^{n/M}
    cplx b = 0.0;  // antiholomorphic side, multiplies qbar^{n/M}
};

struct EvalResult {
    cplx value;
    // NaN when no growth bound is available
    double tail;
};

// F(z) = sum_{k in S} y^k sum_{n0 <= n <= nmax} (a_n^{(k)} q^{n/M} + b_n^{(k)} qbar^{n/M})
class QExpansion {
public:
    using Key = std::pair<int, int>;  // (k, n)

    QExpansion() = default;
    QExpansion(int M, int n0, int nmax);

    int M() const { return M_; }
    int n0() const { return n0_; }
    int nmax() const { return nmax_; }
    const std::set<int>& S() const { return S_; }
    const std::map<Key, Coef>& terms() const { return terms_; }
    const std::optional<Growth>& growth() const { return growth_; }

    Coef coef(int k, int n) const;
    // Adds to the stored coefficient; k joins S.
    void add(int k, int n, cplx a, cplx b);
    void set(int k, int n, cplx a, cplx b);
    void add_to_S(int k) { S_.insert(k); }

    // Declares growth; throws InvalidArgument if a stored coefficient violates it.
    void declare_growth(const Growth& g);
    void clear_growth() { growth_.reset(); }
    // Least C with t fixed that fits stored coefficients.
    Growth fitted_growth(double t = 2, double kappa = 1) const;
    // Growth to use for tails: declared, else fitted.
    Growth effective_growth() const;

    double max_abs_coef() const;
    bool is_zero() const;

    friend bool operator==(const QExpansion&, const QExpansion&) = default;

private:
    void check_key(int k, int n) const;
    void check_growth(const Growth& g) const;

    int M_ = 1;
    int n0_ = 0;
    int nmax_ = 0;
    std::set<int> S_;
    std::map<Key, Coef> terms_;
    std::optional<Growth> growth_;
};

// F(z) = sum_j y^j sum_{m,n} a^{(j)}_{m,n} q^{m/M} qbar^{n/M}
class BiExpansion {
public:
    using Key = std::tuple<int, int, int>;  // (j, m, n)

    BiExpansion() = default;
    BiExpansion(int M, int N0, int N0p, int mmax);

    int M() const { return M_; }
    int N0() const { return N0_; }
    int N0p() const { return N0p_; }
    int mmax() const { return mmax_; }
    const std::map<Key, cplx>& terms() const { return terms_; }

    void add(int j, int m, int n, cplx a);
    void set(int j, int m, int n, cplx a);
    cplx coef(int j, int m, int n) const;

    friend bool operator==(const BiExpansion&, const BiExpansion&) = default;

private:
    int M_ = 1, N0_ = 0, N0p_ = 0, mmax_ = 0;
    std::map<Key, cplx> terms_;
};

struct EigenData {
    int k0 = 0;
    int k0p = 0;
    long lambda = 0;
    QExpansion Fh, Fa, F0;
};

EvalResult evaluate(const QExpansion& e, cplx z, int nmax = -1);
EvalResult evaluate(const BiExpansion& e, cplx z, int mmax = -1);
Evaluator evaluator(const QExpansion& e);
Evaluator evaluator(const BiExpansion& e);

QExpansion raise(const QExpansion& e, int r);
QExpansion lower(const QExpansion& e, int s);
BiExpansion raise(const BiExpansion& e, int r);
BiExpansion lower(const BiExpansion& e, int s);

// Delta_{r,s}; both composition orders are computed and compared.
QExpansion laplacian(const QExpansion& e, Weights w);
BiExpansion laplacian(const BiExpansion& e, Weights w);

QExpansion twist(const QExpansion& e, const DirichletCharacter& chi);
BiExpansion twist(const BiExpansion& e, const DirichletCharacter& chi);

QExpansion conjugate(const QExpansion& e);
BiExpansion conjugate(const BiExpansion& e);

EigenData eigen_split(const QExpansion& e, Weights w, double tol = 1e-9);

QExpansion scale(const QExpansion& e, cplx c);
QExpansion add(const QExpansion& x, const QExpansion& y);

// Max coefficient-wise difference; keys missing on one side count as zero.
double max_coef_diff(const QExpansion& x, const QExpansion& y);
double max_coef_diff(const BiExpansion& x, const BiExpansion& y);

BiExpansion to_bi(const QExpansion& e);

}  // namespace ramf
