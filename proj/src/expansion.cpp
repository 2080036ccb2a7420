#include "ramf/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ramf {

QExpansion::QExpansion(int M, int n0, int nmax) : M_(M), n0_(n0), nmax_(nmax) {
    if (M < 1) throw InvalidArgument("QExpansion: M must be positive");
    if (nmax < n0) throw InvalidArgument("QExpansion: nmax < n0");
}

void QExpansion::check_key(int k, int n) const {
    (void)k;
    if (n < n0_ || n > nmax_)
        throw InvalidArgument("QExpansion: frequency " + std::to_string(n) + " outside [n0, nmax]");
}

Coef QExpansion::coef(int k, int n) const {
    auto it = terms_.find({k, n});
    return it == terms_.end() ? Coef{} : it->second;
}

void QExpansion::add(int k, int n, cplx a, cplx b) {
    check_key(k, n);
    S_.insert(k);
    Coef& c = terms_[{k, n}];
    c.a += a;
    c.b += b;
    if (growth_) {
        double bound = growth_->kappa * std::exp(growth_->C * std::pow(std::abs(n), 1.0 / growth_->t));
        if (std::abs(c.a) > bound * (1 + 1e-12) || std::abs(c.b) > bound * (1 + 1e-12))
            throw InvalidArgument("QExpansion: coefficient at (k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                                  ") violates the declared growth bound");
    }
}

void QExpansion::set(int k, int n, cplx a, cplx b) {
    check_key(k, n);
    terms_.erase({k, n});
    add(k, n, a, b);
}

void QExpansion::check_growth(const Growth& g) const {
    if (!(g.t > 0) || !(g.kappa > 0) || !std::isfinite(g.C)) throw InvalidArgument("QExpansion: bad growth parameters");
    for (auto& [key, c] : terms_) {
        double bound = g.kappa * std::exp(g.C * std::pow(std::abs(key.second), 1.0 / g.t));
        if (std::abs(c.a) > bound * (1 + 1e-12) || std::abs(c.b) > bound * (1 + 1e-12))
            throw InvalidArgument("QExpansion: coefficient at (k=" + std::to_string(key.first) +
                                  ", n=" + std::to_string(key.second) + ") violates the declared growth bound");
    }
}

void QExpansion::declare_growth(const Growth& g) {
    check_growth(g);
    growth_ = g;
}

Growth QExpansion::fitted_growth(double t, double kappa) const {
    Growth g{0.0, t, kappa};
    for (auto& [key, c] : terms_) {
        double m = std::max(std::abs(c.a), std::abs(c.b));
        if (m <= kappa) continue;
        int n = std::abs(key.second);
        if (n == 0) {
            g.kappa = std::max(g.kappa, m);
            continue;
        }
        g.C = std::max(g.C, std::log(m / kappa) / std::pow(n, 1.0 / t) * (1 + 1e-12));
    }
    return g;
}

Growth QExpansion::effective_growth() const { return growth_ ? *growth_ : fitted_growth(); }

double QExpansion::max_abs_coef() const {
    double m = 0;
    for (auto& [key, c] : terms_) m = std::max({m, std::abs(c.a), std::abs(c.b)});
    return m;
}

bool QExpansion::is_zero() const {
    for (auto& [key, c] : terms_)
        if (c.a != cplx(0.0) || c.b != cplx(0.0)) return false;
    return true;
}

BiExpansion::BiExpansion(int M, int N0, int N0p, int mmax) : M_(M), N0_(N0), N0p_(N0p), mmax_(mmax) {
    if (M < 1 || N0 < 0 || N0p < 0) throw InvalidArgument("BiExpansion: bad shape parameters");
}

void BiExpansion::add(int j, int m, int n, cplx a) {
    if (std::abs(j) > N0_ || m < -N0p_ || n < -N0p_ || m > mmax_ || n > mmax_)
        throw InvalidArgument("BiExpansion: index (" + std::to_string(j) + "," + std::to_string(m) + "," +
                              std::to_string(n) + ") outside the declared bounds");
    terms_[{j, m, n}] += a;
}

void BiExpansion::set(int j, int m, int n, cplx a) {
    terms_.erase({j, m, n});
    add(j, m, n, a);
}

cplx BiExpansion::coef(int j, int m, int n) const {
    auto it = terms_.find({j, m, n});
    return it == terms_.end() ? cplx(0.0) : it->second;
}

namespace {

void require_upper(cplx z) {
    if (!(z.imag() > 0)) throw DomainError("evaluate: Im z must be positive");
}

double growth_tail(const Growth& g, const std::set<int>& S, int nmax, int M, double y) {
    double ypow = 0;
    for (int k : S) ypow += std::pow(y, k);
    double decay = 2 * kPi * y / M;
    if (g.t <= 1 && g.C >= decay) return std::numeric_limits<double>::infinity();
    double sum = 0;
    for (long n = std::max(nmax + 1, 1); n < nmax + 1000000L; ++n) {
        double term = 2 * g.kappa * ypow * std::exp(g.C * std::pow(static_cast<double>(n), 1.0 / g.t) - decay * n);
        sum += term;
        // exponent is eventually decreasing; stop once negligible
        if (term < 1e-18 * sum && n > nmax + 10) break;
        if (term == 0) break;
    }
    return sum;
}

}  // namespace

EvalResult evaluate(const QExpansion& e, cplx z, int nmax) {
    require_upper(z);
    int top = nmax < 0 ? e.nmax() : std::min(nmax, e.nmax());
    double y = z.imag();
    cplx s = 0.0;
    int lastn = std::numeric_limits<int>::min();
    cplx qn = 0.0;
    std::map<int, double> ypow;
    for (auto& [key, c] : e.terms()) {
        auto [k, n] = key;
        if (n > top) continue;
        if (n != lastn) {
            qn = std::exp(2.0 * kPi * kI * z * (static_cast<double>(n) / e.M()));
            lastn = n;
        }
        auto it = ypow.find(k);
        if (it == ypow.end()) it = ypow.emplace(k, std::pow(y, k)).first;
        // qbar^{n/M} = conj(q^{n/M})
        s += it->second * (c.a * qn + c.b * std::conj(qn));
    }
    double tail = std::numeric_limits<double>::quiet_NaN();
    if (e.growth()) tail = growth_tail(*e.growth(), e.S(), top, e.M(), y);
    return {s, tail};
}

EvalResult evaluate(const BiExpansion& e, cplx z, int mmax) {
    require_upper(z);
    int top = mmax < 0 ? e.mmax() : std::min(mmax, e.mmax());
    double x = z.real(), y = z.imag();
    cplx s = 0.0;
    for (auto& [key, a] : e.terms()) {
        auto [j, m, n] = key;
        if (m > top || n > top) continue;
        double phase = 2 * kPi * (m - n) * x / e.M();
        double damp = -2 * kPi * (m + n) * y / e.M();
        s += a * std::pow(y, j) * std::polar(std::exp(damp), phase);
    }
    return {s, std::numeric_limits<double>::quiet_NaN()};
}

Evaluator evaluator(const QExpansion& e) {
    return [e](cplx z) { return evaluate(e, z).value; };
}

Evaluator evaluator(const BiExpansion& e) {
    return [e](cplx z) { return evaluate(e, z).value; };
}

namespace {

QExpansion same_shape(const QExpansion& e) {
    QExpansion out(e.M(), e.n0(), e.nmax());
    for (int k : e.S()) out.add_to_S(k);
    return out;
}

// Growth after an operator that multiplies coefficients by at most
// factor * (1 + |n|).
void propagate_growth(const QExpansion& in, QExpansion& out, double factor, bool poly_n) {
    if (!in.growth()) return;
    Growth g = *in.growth();
    g.kappa *= std::max(factor, 1e-300);
    if (poly_n) {
        // |n| <= t^t e^{-t} e^{|n|^{1/t}}
        g.kappa *= 1 + std::pow(g.t, g.t) * std::exp(-g.t);
        g.C += 1;
    }
    Growth fit = out.fitted_growth(g.t, g.kappa);
    g.C = std::max(g.C, fit.C);
    g.kappa = std::max(g.kappa, fit.kappa);
    out.declare_growth(g);
}

}  // namespace

QExpansion raise(const QExpansion& e, int r) {
    QExpansion out = same_shape(e);
    for (auto& [key, c] : e.terms()) {
        auto [k, n] = key;
        double nm = static_cast<double>(n) / e.M();
        out.add(k, n, static_cast<double>(r + k) * c.a, static_cast<double>(r + k) * c.b);
        if (n != 0 && c.a != cplx(0.0)) out.add(k + 1, n, -4 * kPi * nm * c.a, 0.0);
    }
    int kmax = e.S().empty() ? 0 : std::max(std::abs(*e.S().begin()), std::abs(*e.S().rbegin()));
    propagate_growth(e, out, std::abs(r) + kmax + 4 * kPi / e.M(), true);
    return out;
}

QExpansion lower(const QExpansion& e, int s) {
    QExpansion out = same_shape(e);
    for (auto& [key, c] : e.terms()) {
        auto [k, n] = key;
        double nm = static_cast<double>(n) / e.M();
        out.add(k, n, static_cast<double>(s + k) * c.a, static_cast<double>(s + k) * c.b);
        if (n != 0 && c.b != cplx(0.0)) out.add(k + 1, n, 0.0, -4 * kPi * nm * c.b);
    }
    int kmax = e.S().empty() ? 0 : std::max(std::abs(*e.S().begin()), std::abs(*e.S().rbegin()));
    propagate_growth(e, out, std::abs(s) + kmax + 4 * kPi / e.M(), true);
    return out;
}

namespace {

BiExpansion widened(const BiExpansion& e) { return BiExpansion(e.M(), e.N0() + 1, e.N0p(), e.mmax()); }

}  // namespace

BiExpansion raise(const BiExpansion& e, int r) {
    BiExpansion out = widened(e);
    for (auto& [key, a] : e.terms()) {
        auto [j, m, n] = key;
        out.add(j, m, n, static_cast<double>(r + j) * a);
        if (m != 0) out.add(j + 1, m, n, -4 * kPi * static_cast<double>(m) / e.M() * a);
    }
    return out;
}

BiExpansion lower(const BiExpansion& e, int s) {
    BiExpansion out = widened(e);
    for (auto& [key, a] : e.terms()) {
        auto [j, m, n] = key;
        out.add(j, m, n, static_cast<double>(s + j) * a);
        if (n != 0) out.add(j + 1, m, n, -4 * kPi * static_cast<double>(n) / e.M() * a);
    }
    return out;
}

double max_coef_diff(const QExpansion& x, const QExpansion& y) {
    double d = 0;
    for (auto& [key, c] : x.terms()) {
        Coef o = y.coef(key.first, key.second);
        d = std::max({d, std::abs(c.a - o.a), std::abs(c.b - o.b)});
    }
    for (auto& [key, c] : y.terms()) {
        Coef o = x.coef(key.first, key.second);
        d = std::max({d, std::abs(c.a - o.a), std::abs(c.b - o.b)});
    }
    return d;
}

double max_coef_diff(const BiExpansion& x, const BiExpansion& y) {
    double d = 0;
    for (auto& [key, a] : x.terms()) d = std::max(d, std::abs(a - y.coef(std::get<0>(key), std::get<1>(key), std::get<2>(key))));
    for (auto& [key, a] : y.terms()) d = std::max(d, std::abs(a - x.coef(std::get<0>(key), std::get<1>(key), std::get<2>(key))));
    return d;
}

QExpansion scale(const QExpansion& e, cplx c) {
    QExpansion out = same_shape(e);
    for (auto& [key, v] : e.terms()) out.add(key.first, key.second, c * v.a, c * v.b);
    if (e.growth()) {
        Growth g = *e.growth();
        g.kappa *= std::max(std::abs(c), 1e-300);
        out.declare_growth(g);
    }
    return out;
}

QExpansion add(const QExpansion& x, const QExpansion& y) {
    if (x.M() != y.M()) throw InvalidArgument("add: expansions with different M");
    QExpansion out(x.M(), std::min(x.n0(), y.n0()), std::max(x.nmax(), y.nmax()));
    for (int k : x.S()) out.add_to_S(k);
    for (int k : y.S()) out.add_to_S(k);
    for (auto& [key, v] : x.terms()) out.add(key.first, key.second, v.a, v.b);
    for (auto& [key, v] : y.terms()) out.add(key.first, key.second, v.a, v.b);
    if (x.growth() && y.growth()) {
        Growth g{std::max(x.growth()->C, y.growth()->C), std::min(x.growth()->t, y.growth()->t),
                 x.growth()->kappa + y.growth()->kappa};
        Growth fit = out.fitted_growth(g.t, g.kappa);
        g.C = std::max(g.C, fit.C);
        out.declare_growth(g);
    }
    return out;
}

QExpansion laplacian(const QExpansion& e, Weights w) {
    int r = w.r, s = w.s;
    QExpansion one = add(scale(lower(raise(e, r), s - 1), -1.0), scale(e, static_cast<double>(r) * (s - 1)));
    QExpansion two = add(scale(raise(lower(e, s), r - 1), -1.0), scale(e, static_cast<double>(s) * (r - 1)));
    double scale_ref = std::max(1.0, std::max(one.max_abs_coef(), two.max_abs_coef()));
    if (max_coef_diff(one, two) > 1e-12 * scale_ref)
        throw InternalError("laplacian: the two composition orders disagree");
    return one;
}

BiExpansion laplacian(const BiExpansion& e, Weights w) {
    int r = w.r, s = w.s;
    BiExpansion a = lower(raise(e, r), s - 1);
    BiExpansion b = raise(lower(e, s), r - 1);
    BiExpansion one(e.M(), e.N0() + 2, e.N0p(), e.mmax()), two = one;
    for (auto& [key, v] : a.terms()) one.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), -v);
    for (auto& [key, v] : e.terms())
        one.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), static_cast<double>(r) * (s - 1) * v);
    for (auto& [key, v] : b.terms()) two.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), -v);
    for (auto& [key, v] : e.terms())
        two.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), static_cast<double>(s) * (r - 1) * v);
    double ref = 1;
    for (auto& [key, v] : one.terms()) ref = std::max(ref, std::abs(v));
    if (max_coef_diff(one, two) > 1e-12 * ref) throw InternalError("laplacian: the two composition orders disagree");
    return one;
}

QExpansion twist(const QExpansion& e, const DirichletCharacter& chi) {
    if (e.M() != 1) throw UnsupportedInput("twist: expansion must have M = 1");
    i64 D = chi.modulus();
    DirichletCharacter chib = conjugate(chi);
    std::vector<cplx> tau_bar(static_cast<std::size_t>(D)), tau_conj(static_cast<std::size_t>(D));
    for (i64 n = 0; n < D; ++n) {
        tau_bar[static_cast<std::size_t>(n)] = gauss_sum(chib, n);
        tau_conj[static_cast<std::size_t>(n)] = std::conj(gauss_sum(chi, n));
    }
    QExpansion out(static_cast<int>(D), e.n0(), e.nmax());
    for (int k : e.S()) out.add_to_S(k);
    double Dd = static_cast<double>(D);
    for (auto& [key, c] : e.terms()) {
        auto [k, n] = key;
        std::size_t r = static_cast<std::size_t>(floor_mod(n, D));
        double f = std::pow(Dd, -k);
        out.add(k, n, f * tau_bar[r] * c.a, f * tau_conj[r] * c.b);
    }
    if (e.growth()) {
        Growth g = *e.growth();
        double fmax = 0;
        for (int k : e.S()) fmax = std::max(fmax, std::pow(Dd, -k));
        g.kappa *= Dd * std::max(fmax, 1.0);
        out.declare_growth(g);
    }
    return out;
}

BiExpansion twist(const BiExpansion& e, const DirichletCharacter& chi) {
    if (e.M() != 1) throw UnsupportedInput("twist: expansion must have M = 1");
    i64 D = chi.modulus();
    DirichletCharacter chib = conjugate(chi);
    BiExpansion out(static_cast<int>(D), e.N0(), e.N0p(), e.mmax());
    double Dd = static_cast<double>(D);
    for (auto& [key, a] : e.terms()) {
        auto [j, m, n] = key;
        out.add(j, m, n, std::pow(Dd, -j) * gauss_sum(chib, m - n) * a);
    }
    return out;
}

QExpansion conjugate(const QExpansion& e) {
    QExpansion out = same_shape(e);
    for (auto& [key, c] : e.terms()) out.add(key.first, key.second, std::conj(c.b), std::conj(c.a));
    if (e.growth()) out.declare_growth(*e.growth());
    return out;
}

BiExpansion conjugate(const BiExpansion& e) {
    BiExpansion out(e.M(), e.N0(), e.N0p(), e.mmax());
    for (auto& [key, a] : e.terms()) {
        auto [j, m, n] = key;
        out.add(j, n, m, std::conj(a));
    }
    return out;
}

EigenData eigen_split(const QExpansion& e, Weights w, double tol) {
    if (e.M() != 1) throw UnsupportedInput("eigen_split: expansion must have M = 1");
    QExpansion L = laplacian(e, w);
    // eigenvalue from the largest coefficient
    double best = -1;
    cplx ratio = 0.0;
    for (auto& [key, c] : e.terms()) {
        for (int side = 0; side < 2; ++side) {
            cplx v = side == 0 ? c.a : c.b;
            if (std::abs(v) > best) {
                best = std::abs(v);
                Coef lc = L.coef(key.first, key.second);
                ratio = (side == 0 ? lc.a : lc.b) / v;
            }
        }
    }
    long lambda = best > 0 ? std::lround(ratio.real()) : 0;
    double ref = std::max(1.0, e.max_abs_coef());
    QExpansion resid = add(L, scale(e, -static_cast<double>(lambda)));
    for (auto& [key, c] : resid.terms()) {
        if (std::abs(c.a) > tol * ref || std::abs(c.b) > tol * ref)
            throw PreconditionError("eigen_split: not an eigenfunction; first offending coefficient at (k=" +
                                    std::to_string(key.first) + ", n=" + std::to_string(key.second) + ")");
    }
    // k^2 + (w-1) k + lambda = 0
    long B = w.w() - 1;
    long disc = B * B - 4 * lambda;
    long sq = disc >= 0 ? std::lround(std::sqrt(static_cast<double>(disc))) : -1;
    if (disc < 0 || sq * sq != disc || (sq - B) % 2 != 0)
        throw StructuralError("eigen_split: eigenvalue " + std::to_string(lambda) + " has no integer k0");
    EigenData out;
    out.lambda = lambda;
    out.k0 = static_cast<int>((-B + sq) / 2);
    out.k0p = static_cast<int>((-B - sq) / 2);
    out.Fh = same_shape(e);
    out.Fa = same_shape(e);
    out.F0 = same_shape(e);
    int k0p = out.k0p, other = 1 - w.w() - k0p;
    for (auto& [key, c] : e.terms()) {
        auto [k, n] = key;
        if (n == 0) {
            if (c.a + c.b == cplx(0.0)) continue;
            if (k != k0p && k != other)
                throw StructuralError("eigen_split: pure y-power y^" + std::to_string(k) + " outside {y^k0', y^(1-r-s-k0')}");
            out.F0.add(k, 0, c.a, c.b);
            continue;
        }
        if (c.a != cplx(0.0)) {
            if (k < k0p || k > -w.s)
                throw StructuralError("eigen_split: holomorphic term y^" + std::to_string(k) + " q^" + std::to_string(n) +
                                      " outside k0' <= k <= -s");
            out.Fh.add(k, n, c.a, 0.0);
        }
        if (c.b != cplx(0.0)) {
            if (k < k0p || k > -w.r)
                throw StructuralError("eigen_split: antiholomorphic term y^" + std::to_string(k) + " qbar^" +
                                      std::to_string(n) + " outside k0' <= k <= -r");
            out.Fa.add(k, n, 0.0, c.b);
        }
    }
    for (const QExpansion* part : {&out.Fh, &out.Fa, &out.F0}) {
        QExpansion d = add(laplacian(*part, w), scale(*part, -static_cast<double>(lambda)));
        if (d.max_abs_coef() > tol * ref) throw InternalError("eigen_split: a part is not an eigenfunction");
    }
    return out;
}

BiExpansion to_bi(const QExpansion& e) {
    int kmax = 0;
    for (int k : e.S()) kmax = std::max(kmax, std::abs(k));
    BiExpansion out(e.M(), kmax, std::max(0, -e.n0()), e.nmax());
    for (auto& [key, c] : e.terms()) {
        auto [k, n] = key;
        if (c.a != cplx(0.0)) out.add(k, n, 0, c.a);
        if (c.b != cplx(0.0)) out.add(k, 0, n, c.b);
    }
    return out;
}

}  // namespace ramf
