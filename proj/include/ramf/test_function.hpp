#pragma once

#include <map>
#include <vector>

#include "ramf/common.hpp"

namespace ramf {

// phi(y) = sum_p c_p y^p on [lo, hi)
struct Piece {
    double lo = 0, hi = 0;
    std::map<int, cplx> coeffs;

    cplx eval(double y) const;
};

class TestFunction {
public:
    TestFunction() = default;
    explicit TestFunction(std::vector<Piece> pieces);

    static TestFunction indicator(double lo, double hi);
    static TestFunction monomial(double lo, double hi, int p, cplx c = 1.0);

    const std::vector<Piece>& pieces() const { return pieces_; }
    double support_lo() const;
    double support_hi() const;
    bool empty() const { return pieces_.empty(); }

    cplx operator()(double y) const;
    TestFunction conj() const;
    TestFunction scaled(cplx c) const;

    friend bool operator==(const TestFunction& x, const TestFunction& y);

private:
    std::vector<Piece> pieces_;
};

bool operator==(const Piece& x, const Piece& y);

// Bumps on geometric subintervals of [lo, hi], count pieces in total.
std::vector<TestFunction> bump_family(double lo, double hi, int count);

// True when every point of [lo, hi] lies in the support of some member.
bool covers(const std::vector<TestFunction>& family, double lo, double hi);

}  // namespace ramf
