#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ramf/arithmetic.hpp"
#include "ramf/expansion.hpp"
#include "ramf/modular_group.hpp"

namespace ramf {

enum class EisKind { Holomorphic, NonHolomorphic, RealAnalytic };

std::string to_string(EisKind k);
EisKind parse_kind(const std::string& s);

struct EisensteinSpec {
    i64 N = 1;
    DirichletCharacter chi;
    Cusp cusp;
    EisKind kind = EisKind::RealAnalytic;
    int r = 1;
    int s = 1;  // only for RealAnalytic
    i64 bound = 400;
    // Adds the continuum estimate of the terms outside the box.
    bool tail_correction = true;

    int weight() const { return kind == EisKind::RealAnalytic ? r + s : r; }
};

// Throws InvalidSpec when the cusp is not singular, the parity condition fails
// or the weights are out of range.
void validate(const EisensteinSpec& spec);

// Sign condition on the stabiliser: the summand is invariant under gamma -> -gamma.
bool sign_condition_holds(const EisensteinSpec& spec);

class EisensteinSeries {
public:
    explicit EisensteinSeries(EisensteinSpec spec);

    EvalResult value(cplx z) const;
    cplx operator()(cplx z) const { return value(z).value; }
    const EisensteinSpec& spec() const { return spec_; }
    std::size_t term_count() const { return rows_->size(); }

private:
    struct Row {
        double c, d;
        cplx weight;
    };
    cplx term(double c, double d, cplx z) const;

    EisensteinSpec spec_;
    std::shared_ptr<const std::vector<CosetRep>> reps_;
    std::shared_ptr<std::vector<Row>> rows_;
    cplx pref_;
    double density_;
    bool trivial_;
};

EvalResult eisenstein_value(const EisensteinSpec& spec, cplx z);

// Finite-difference residual of the derivative identities; which in 1..4.
double differential_identity_residual(const EisensteinSpec& spec, cplx z, int which, double h = 1e-5);

// |Delta F + w F| / |F| by second-order central differences.
double laplacian_eigen_residual(const EisensteinSpec& spec, cplx z, double h = 1e-4);
// |Delta_{r,s} F - lambda F| / |F| for an arbitrary evaluator.
double laplacian_eigen_residual(const Evaluator& F, Weights w, double lambda, cplx z, double h = 1e-4);

// Finite-difference raising/lowering of an evaluator at z.
cplx fd_raise(const Evaluator& F, int r, cplx z, double h);
cplx fd_lower(const Evaluator& F, int s, cplx z, double h);

// Expansion of the level-one series of weights (r, r).
QExpansion level1_expansion(int r, int nmax);

}  // namespace ramf
