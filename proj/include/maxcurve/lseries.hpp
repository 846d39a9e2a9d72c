#pragma once

#include <vector>

#include "maxcurve/gf.hpp"

namespace maxcurve {

// Truncated Laurent series over F_{q^2}: coefficients for exponents
// val .. trunc-1, with trunc propagated pessimistically through arithmetic
// (min over operands, shifted by valuations under multiplication). The
// leading stored coefficient is nonzero unless the series is zero up to
// trunc, in which case val == trunc and no coefficients are stored.
class Series {
public:
    Series(const FieldCtx* F, int val, std::vector<Fe> coeffs, int trunc);
    static Series zero(const FieldCtx& F, int trunc) { return Series(&F, trunc, {}, trunc); }
    static Series constant(const FieldCtx& F, Fe c, int trunc) { return Series(&F, 0, {c}, trunc); }
    static Series monomial(const FieldCtx& F, Fe c, int e, int trunc) {
        return Series(&F, e, {c}, trunc);
    }

    const FieldCtx& field() const { return *F_; }
    int trunc() const { return trunc_; }
    bool is_zero_to_trunc() const { return coeffs_.empty(); }
    // Valuation of a series known to be nonzero; PrecisionExhausted when every
    // stored coefficient vanishes (a valuation >= trunc cannot be certified).
    int valuation() const;
    Fe coeff(int e) const;  // PrecisionExhausted for e >= trunc

    Series operator-() const;
    Series scaled(Fe c) const;
    Series shifted(int k) const;  // multiply by t^k
    Series pow(long e) const;
    Series inverse() const;  // ZeroLeading when zero up to trunc
    Series truncated(int new_trunc) const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);

private:
    void normalize();
    const FieldCtx* F_;
    int val_;
    int trunc_;
    std::vector<Fe> coeffs_;
};

// Unique series s(t) with s(0) = init solving sum_j c_j(t) s^j = 0, where the
// polynomial condition is given by its coefficient series c_j (power series,
// val >= 0). Requires init to be a simple root of the reduced condition at
// t = 0; SingularLift otherwise. Verified by substituting back.
Series hensel_solve(const FieldCtx& F, const std::vector<Series>& condition, Fe init, int trunc);

// Expansion of x in the local parameter pi = 1/y at a place over x = infinity
// for even m: x = alpha pi^{-m/2} + beta pi^{(q+1-m)/2} + h.o.t., with all
// coefficients strictly between those exponents equal to zero,
// alpha^{2(q+1)/m} = -1 and 2(q+1)/m alpha^{2(q+1)/m - 1} beta + alpha^{(q+1)/m} = 0.
struct InfinityExpansion {
    Fe alpha, beta;
    Series x;
};
InfinityExpansion expand_x_at_infinity(const FieldCtx& F, long q, long m, Fe branch_root,
                                       int trunc = -1);  // NotABranchRoot

// T-expansions of X = (x-a)/a and Y = (y-b)/b at an affine place with ab != 0,
// T = (u-A)/A for a Hermitian point (A,B) over (a,b):
//   X = (T+1)^m - 1 exactly,  Y = (1+alpha) T + alpha T^2 + O(T^q),
//   alpha = a^{(q+1)/m} / (1 + a^{(q+1)/m}).
struct AffineExpansion {
    Series X, Y;
    Fe alpha;
};
// Entry point in curve coordinates; works at every rational place (the
// Hermitian relation is used through z = a^{(q+1)/m} only, so no rational
// preimage (A,B) is needed).
AffineExpansion expand_xy_at_place(const FieldCtx& F, long q, long m, Fe a, Fe b,
                                   int trunc);  // TruncationBeyondQ
// Hermitian-coordinate interface: requires (A,B) on u^{q+1}+v^{q+1}+1 = 0
// with AB != 0 (NotOnHermitian) and delegates with a = A^m, b = AB.
AffineExpansion expand_xy_at_affine_place(const FieldCtx& F, long q, long m, Fe A, Fe B,
                                          int trunc);

}  // namespace maxcurve
