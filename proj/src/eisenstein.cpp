#include "ramf/eisenstein.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "ramf/parallel.hpp"
#include "ramf/quadrature.hpp"
#include "ramf/special.hpp"

namespace ramf {

std::string to_string(EisKind k) {
    switch (k) {
        case EisKind::Holomorphic: return "holomorphic";
        case EisKind::NonHolomorphic: return "nonholomorphic";
        case EisKind::RealAnalytic: return "real-analytic";
    }
    return "?";
}

EisKind parse_kind(const std::string& s) {
    if (s == "holomorphic" || s == "holo") return EisKind::Holomorphic;
    if (s == "nonholomorphic" || s == "non-holomorphic" || s == "nonholo") return EisKind::NonHolomorphic;
    if (s == "real-analytic" || s == "real_analytic" || s == "ra") return EisKind::RealAnalytic;
    throw InvalidArgument("unknown Eisenstein kind '" + s + "'");
}

bool sign_condition_holds(const EisensteinSpec& spec) {
    int p = spec.chi.parity();
    switch (spec.kind) {
        case EisKind::Holomorphic: return p == (spec.r % 2 == 0 ? 1 : -1);
        case EisKind::NonHolomorphic: return p == 1;
        case EisKind::RealAnalytic: return p == ((spec.r + spec.s) % 2 == 0 ? 1 : -1);
    }
    return false;
}

void validate(const EisensteinSpec& spec) {
    if (spec.N < 1) throw InvalidSpec("Eisenstein: level must be positive");
    if (spec.chi.modulus() != spec.N) throw InvalidSpec("Eisenstein: character modulus must equal the level");
    if (spec.bound < 1) throw InvalidSpec("Eisenstein: bound must be positive");
    switch (spec.kind) {
        case EisKind::Holomorphic:
            if (spec.r < 3) throw InvalidSpec("Eisenstein: holomorphic series needs r >= 3");
            break;
        case EisKind::NonHolomorphic:
            if (spec.r < 2) throw InvalidSpec("Eisenstein: non-holomorphic series needs integer r >= 2");
            break;
        case EisKind::RealAnalytic:
            if (spec.r < 0 || spec.s < 0 || spec.r + spec.s < 2)
                throw InvalidSpec("Eisenstein: real-analytic series needs r, s >= 0 and r + s >= 2");
            break;
    }
    if (!is_singular_cusp(spec.cusp, spec.chi, spec.N))
        throw InvalidSpec("Eisenstein: cusp " + spec.cusp.str() + " is not singular for the character");
    if (!sign_condition_holds(spec))
        throw InvalidSpec("Eisenstein: sign condition on the stabiliser fails (character parity vs weight)");
}

namespace {

std::shared_ptr<const std::vector<CosetRep>> cached_reps(const Cusp& u, i64 N, i64 bound) {
    static std::mutex mu;
    static std::map<std::tuple<i64, i64, i64, i64>, std::shared_ptr<const std::vector<CosetRep>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(N, u.a, u.c, bound);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (cache.size() > 16) cache.clear();
    auto v = std::make_shared<const std::vector<CosetRep>>(coset_reps_with_rows(u, N, bound));
    cache[key] = v;
    return v;
}

}  // namespace

EisensteinSeries::EisensteinSeries(EisensteinSpec spec) : spec_(std::move(spec)) {
    validate(spec_);
    reps_ = cached_reps(spec_.cusp, spec_.N, spec_.bound);
    rows_ = std::make_shared<std::vector<Row>>();
    rows_->reserve(reps_->size());
    for (auto& rep : *reps_)
        rows_->push_back({static_cast<double>(rep.cp), static_cast<double>(rep.dp), std::conj(spec_.chi(rep.gamma.d))});
    trivial_ = spec_.chi.is_trivial();
    const cplx tpi = 2.0 * kPi * kI;
    int r = spec_.r, w = spec_.weight();
    switch (spec_.kind) {
        case EisKind::Holomorphic: pref_ = zeta_int(r) * factorial(r - 1) / ipow(tpi, r); break;
        case EisKind::NonHolomorphic: pref_ = zeta_int(2 * r); break;
        case EisKind::RealAnalytic: pref_ = factorial(w) * zeta_int(w + 2) / ipow(tpi, w + 1); break;
    }
    density_ = 6.0 / (kPi * kPi) * static_cast<double>(cusp_width(spec_.cusp, spec_.N)) /
               static_cast<double>(gamma0_index(spec_.N));
}

cplx EisensteinSeries::term(double c, double d, cplx z) const {
    cplx j = c * z + d;
    double y = z.imag();
    switch (spec_.kind) {
        case EisKind::Holomorphic: return ipow(j, -spec_.r);
        case EisKind::NonHolomorphic: return ipow(y / std::norm(j), spec_.r);
        case EisKind::RealAnalytic: return kI * y / (ipow(j, spec_.r + 1) * ipow(std::conj(j), spec_.s + 1));
    }
    return 0.0;
}

EvalResult EisensteinSeries::value(cplx z) const {
    if (!(z.imag() > 0)) throw DomainError("Eisenstein: Im z must be positive");
    const auto& rows = *rows_;
    cplx sum = parallel_sum_chunked(rows.size(), [&](std::size_t b, std::size_t e) {
        cplx s = 0.0;
        for (std::size_t i = b; i < e; ++i) s += rows[i].weight * term(rows[i].c, rows[i].d, z);
        return s;
    });

    // Terms outside the box, replaced by the integral over the box complement:
    // sum_{outside} f ~ (rho/2) B^{2-p}/(p-2) int_0^{2pi} f(cos t, sin t) max(|cos t|,|sin t|)^{p-2} dt
    int p = spec_.kind == EisKind::RealAnalytic ? spec_.weight() + 2
            : spec_.kind == EisKind::NonHolomorphic ? 2 * spec_.r
                                                    : spec_.r;
    double B = static_cast<double>(spec_.bound);
    double factor = 0.5 * density_ * std::pow(B, 2 - p) / (p - 2);
    auto mpow = [p](double t) { return std::pow(std::max(std::abs(std::cos(t)), std::abs(std::sin(t))), p - 2); };
    auto fabs = [&](double t) { return cplx(std::abs(term(std::cos(t), std::sin(t), z)) * mpow(t)); };
    auto fval = [&](double t) { return term(std::cos(t), std::sin(t), z) * mpow(t); };
    double coarse = 0;
    const auto& g = gauss_legendre(32);
    for (int k = 0; k < 8; ++k) {
        double a = k * kPi / 4, h = kPi / 8;
        for (std::size_t i = 0; i < g.x.size(); ++i) coarse += g.w[i] * h * fabs(a + h + h * g.x[i]).real();
    }
    double abs_int = 0;
    cplx val_int = 0.0;
    for (int k = 0; k < 8; ++k) {
        double a = k * kPi / 4, b = (k + 1) * kPi / 4;
        abs_int += integrate(fabs, a, b, 1e-10 * coarse).value.real();
        if (trivial_) val_int += integrate(fval, a, b, 1e-14 * coarse).value;
    }
    double tail = std::abs(pref_) * factor * abs_int;
    if (trivial_ && spec_.tail_correction) sum += factor * val_int;
    return {pref_ * sum, tail};
}

EvalResult eisenstein_value(const EisensteinSpec& spec, cplx z) { return EisensteinSeries(spec).value(z); }

cplx fd_raise(const Evaluator& F, int r, cplx z, double h) {
    double y = z.imag();
    cplx fx = (F(z + h) - F(z - h)) / (2 * h);
    cplx fy = (F(z + kI * h) - F(z - kI * h)) / (2 * h);
    // 2iy d/dz + r, d/dz = (d/dx - i d/dy)/2
    return kI * y * (fx - kI * fy) + static_cast<double>(r) * F(z);
}

cplx fd_lower(const Evaluator& F, int s, cplx z, double h) {
    double y = z.imag();
    cplx fx = (F(z + h) - F(z - h)) / (2 * h);
    cplx fy = (F(z + kI * h) - F(z - kI * h)) / (2 * h);
    // -2iy d/dzbar + s, d/dzbar = (d/dx + i d/dy)/2
    return -kI * y * (fx + kI * fy) + static_cast<double>(s) * F(z);
}

double differential_identity_residual(const EisensteinSpec& spec, cplx z, int which, double h) {
    if (spec.kind != EisKind::RealAnalytic) throw InvalidArgument("differential identities need the real-analytic series");
    if (which < 1 || which > 4) throw InvalidArgument("which must be 1..4");
    int r = spec.r, s = spec.s, w = r + s;
    double y = z.imag();
    auto with = [&](EisKind k, int rr, int ss, const DirichletCharacter& chi) {
        EisensteinSpec t = spec;
        t.kind = k;
        t.r = rr;
        t.s = ss;
        t.chi = chi;
        return EisensteinSeries(t);
    };
    switch (which) {
        case 1: {
            EisensteinSeries E = with(EisKind::RealAnalytic, w, 0, spec.chi);
            EisensteinSeries G = with(EisKind::Holomorphic, w + 2, 0, spec.chi);
            cplx lhs = fd_raise(E, w, z, h);
            return std::abs(lhs + 2 * kPi * y * G(z));
        }
        case 2: {
            if (s < 1) throw InvalidArgument("identity 2 needs s >= 1");
            EisensteinSeries E = with(EisKind::RealAnalytic, r, s, spec.chi);
            EisensteinSeries E2 = with(EisKind::RealAnalytic, r + 1, s - 1, spec.chi);
            return std::abs(fd_raise(E, r, z, h) - static_cast<double>(r + 1) * E2(z));
        }
        case 3: {
            EisensteinSeries E = with(EisKind::RealAnalytic, 0, w, spec.chi);
            EisensteinSeries G = with(EisKind::Holomorphic, w + 2, 0, conjugate(spec.chi));
            cplx lhs = fd_lower(E, w, z, h);
            double sgn = w % 2 == 0 ? 1.0 : -1.0;
            return std::abs(lhs + 2 * kPi * y * sgn * std::conj(G(z)));
        }
        default: {
            if (r < 1) throw InvalidArgument("identity 4 needs r >= 1");
            EisensteinSeries E = with(EisKind::RealAnalytic, r, s, spec.chi);
            EisensteinSeries E2 = with(EisKind::RealAnalytic, r - 1, s + 1, spec.chi);
            return std::abs(fd_lower(E, s, z, h) - static_cast<double>(s + 1) * E2(z));
        }
    }
}

double laplacian_eigen_residual(const Evaluator& F, Weights w, double lambda, cplx z, double h) {
    double y = z.imag();
    cplx f0 = F(z);
    if (std::abs(f0) < 1e-12) throw DomainError("laplacian_eigen_residual: |F(z)| too small to normalise");
    cplx fxp = F(z + h), fxm = F(z - h), fyp = F(z + kI * h), fym = F(z - kI * h);
    cplx fxx = (fxp - 2.0 * f0 + fxm) / (h * h);
    cplx fyy = (fyp - 2.0 * f0 + fym) / (h * h);
    cplx fx = (fxp - fxm) / (2 * h);
    cplx fy = (fyp - fym) / (2 * h);
    cplx lap = -y * y * (fxx + fyy) + kI * y * static_cast<double>(w.r - w.s) * fx - y * static_cast<double>(w.w()) * fy;
    return std::abs(lap - lambda * f0) / std::abs(f0);
}

double laplacian_eigen_residual(const EisensteinSpec& spec, cplx z, double h) {
    EisensteinSeries E(spec);
    switch (spec.kind) {
        case EisKind::RealAnalytic:
            return laplacian_eigen_residual(E, {spec.r, spec.s}, -static_cast<double>(spec.r + spec.s), z, h);
        case EisKind::Holomorphic: return laplacian_eigen_residual(E, {spec.r, 0}, 0.0, z, h);
        case EisKind::NonHolomorphic:
            return laplacian_eigen_residual(E, {0, 0}, -static_cast<double>(spec.r) * (spec.r - 1), z, h);
    }
    return 0;
}

QExpansion level1_expansion(int r, int nmax) {
    if (r < 1) throw InvalidArgument("level1_expansion: r must be >= 1");
    if (nmax < 0) throw InvalidArgument("level1_expansion: nmax must be >= 0");
    // F = (i/y^r) (2r)!/(2 pi i)^{2r+1} E(z, r+1), with E the weight-0 series
    // normalised by zeta(2r+2) and its integer-parameter Fourier expansion.
    double K = (factorial(2 * r) / std::pow(2 * kPi, 2 * r + 1)) * (r % 2 == 0 ? 1.0 : -1.0);
    QExpansion e(1, 0, nmax);
    e.add(1, 0, K * zeta_int(2 * r + 2), 0.0);
    double c0 = kPi * factorial(2 * r) / (std::pow(4.0, r) * factorial(r) * factorial(r)) * zeta_int(2 * r + 1);
    e.add(-2 * r, 0, K * c0, 0.0);
    for (int n = 1; n <= nmax; ++n) {
        double base = K * std::pow(kPi, r + 1) / factorial(r) * std::pow(n, r) * divisor_sigma(n, -2 * r - 1);
        for (int k = 0; k <= r; ++k) {
            double c = base * factorial(r + k) / (factorial(k) * factorial(r - k)) * std::pow(4 * kPi * n, -k);
            e.add(-r - k, n, c, c);
        }
    }
    e.declare_growth(e.fitted_growth(2.0, std::max(1.0, e.max_abs_coef() > 0 ? std::abs(e.coef(1, 0).a) : 1.0)));
    return e;
}

}  // namespace ramf
