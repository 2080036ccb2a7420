#include <Eigen/Dense>
#include <cmath>

#include "ramf/verifier.hpp"

namespace ramf {

namespace {

int pow2_at_least(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

struct Unknown {
    bool holo;
    int k;
};

}  // namespace

Extraction extract_expansion(const Evaluator& F, int M, const std::set<int>& S, int n0, int nmax,
                             const std::vector<double>& y_samples) {
    if (M < 1) throw InvalidArgument("extract_expansion: M must be positive");
    if (S.empty()) throw InvalidArgument("extract_expansion: empty exponent set");
    if (nmax < n0) throw InvalidArgument("extract_expansion: nmax < n0");
    if (y_samples.size() < S.size()) throw InvalidArgument("extract_expansion: need at least |S| heights");
    for (double y : y_samples)
        if (!(y > 0)) throw InvalidArgument("extract_expansion: heights must be positive");

    int V = std::max(std::abs(nmax), std::abs(n0));
    int nx = pow2_at_least(std::max(64, 4 * (V + 1)));
    std::size_t ny = y_samples.size();
    // modes[y][nu + V]
    std::vector<std::vector<cplx>> modes(ny, std::vector<cplx>(static_cast<std::size_t>(2 * V + 1)));
    double fscale = 0;
    for (std::size_t iy = 0; iy < ny; ++iy) {
        std::vector<cplx> f(static_cast<std::size_t>(nx));
        for (int j = 0; j < nx; ++j) {
            f[static_cast<std::size_t>(j)] = F(cplx(static_cast<double>(M) * j / nx, y_samples[iy]));
            fscale = std::max(fscale, std::abs(f[static_cast<std::size_t>(j)]));
        }
        for (int nu = -V; nu <= V; ++nu) {
            cplx s = 0.0;
            for (int j = 0; j < nx; ++j) s += f[static_cast<std::size_t>(j)] * std::polar(1.0, -2 * kPi * nu * j / nx);
            modes[iy][static_cast<std::size_t>(nu + V)] = s / static_cast<double>(nx);
        }
    }

    Extraction out{QExpansion(M, n0, nmax), {}, 0};
    for (int k : S) out.expansion.add_to_S(k);
    for (int nu = -V; nu <= V; ++nu) {
        std::vector<Unknown> cols;
        bool holo = nu >= n0 && nu <= nmax;
        bool anti = nu != 0 && -nu >= n0 && -nu <= nmax;
        for (int k : S) {
            if (holo) cols.push_back({true, k});
            if (anti) cols.push_back({false, k});
        }
        if (cols.empty()) continue;
        if (cols.size() > ny)
            throw InvalidArgument("extract_expansion: mode " + std::to_string(nu) + " has more unknowns than heights");
        Eigen::MatrixXd A(ny, cols.size());
        Eigen::MatrixXcd b(ny, 1);
        for (std::size_t iy = 0; iy < ny; ++iy) {
            double y = y_samples[iy];
            for (std::size_t c = 0; c < cols.size(); ++c) {
                double decay = cols[c].holo ? std::exp(-2 * kPi * nu * y / M) : std::exp(2 * kPi * nu * y / M);
                A(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(c)) = std::pow(y, cols[c].k) * decay;
            }
            b(static_cast<Eigen::Index>(iy), 0) = modes[iy][static_cast<std::size_t>(nu + V)];
        }
        Eigen::VectorXd colscale = A.colwise().norm();
        Eigen::MatrixXd As = A * colscale.cwiseInverse().asDiagonal();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        double cond = sv(0) / sv(sv.size() - 1);
        if (!(cond <= 1e10))
            throw ExtractionError("extract_expansion: ill-conditioned system at mode " + std::to_string(nu) +
                                  " (condition " + std::to_string(cond) + "); choose different heights");
        Eigen::MatrixXcd sol = svd.solve(b.real()).cast<cplx>() + cplx(0, 1) * svd.solve(b.imag()).cast<cplx>();
        Eigen::MatrixXcd coef = colscale.cwiseInverse().asDiagonal() * sol;
        Eigen::MatrixXcd fit = A.cast<cplx>() * coef;
        double bn = b.norm();
        double res = (fit - b).norm() / std::max(bn, 1e-14 * fscale + 1e-300);
        out.residuals[nu] = res;
        out.max_residual = std::max(out.max_residual, res);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            cplx v = coef(static_cast<Eigen::Index>(c), 0);
            double reach = v == cplx(0.0) ? 0 : std::abs(v) * A.col(static_cast<Eigen::Index>(c)).cwiseAbs().maxCoeff();
            if (reach <= 1e-15 * fscale) continue;
            int n = cols[c].holo ? nu : -nu;
            if (cols[c].holo)
                out.expansion.add(cols[c].k, n, v, 0.0);
            else
                out.expansion.add(cols[c].k, n, 0.0, v);
        }
    }
    return out;
}

}  // namespace ramf
