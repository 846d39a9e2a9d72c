#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "maxcurve/lseries.hpp"

namespace maxcurve {

// A rational place of the nonsingular model of
//   X_{m,q} : y^{q+1} + x^{2(q+1)/m} + x^{(q+1)/m} = 0.
//
// Affine places carry their coordinates (a, b), a != 0. Places over the
// singular point (0:0:1) correspond to orbits of the Hermitian preimages
// (0, eta), eta^{q+1} = -1, under mu_m; `a` stores the smallest coset
// representative. Places over (1:0:0) are keyed for even m by the branch
// root alpha (alpha^{2(q+1)/m} = -1, x = alpha pi^{-m/2} + ...), and for
// odd m by the smallest representative of the coset w mu_m of the leading
// coefficient w of y = w pi^{-2} + ... (w^{q+1} = -1).
struct PlaceRef {
    enum class Kind : uint8_t { AtZero, AtInfinity, Affine };
    Kind kind = Kind::Affine;
    Fe a, b;

    friend bool operator==(const PlaceRef& x, const PlaceRef& y) {
        return x.kind == y.kind && x.a == y.a && x.b == y.b;
    }
    friend bool operator<(const PlaceRef& x, const PlaceRef& y) {
        if (x.kind != y.kind) return x.kind < y.kind;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }
};

// Deterministically ordered list of all rational places, partitioned into
// O_0, O_infinity, O_m = {P_(a,0) : a^{(q+1)/m} = -1},
// O' = {P_(a,b) : 2a^{(q+1)/m} + 1 = 0}, and the rest.
class PlaceTable {
public:
    PlaceTable(const FieldCtx& F, long q, long m);  // BadParams

    const FieldCtx& field() const { return *F_; }
    long q() const { return q_; }
    long m() const { return m_; }
    long n() const { return n_; }

    const std::vector<PlaceRef>& all() const { return places_; }
    long size() const { return static_cast<long>(places_.size()); }
    int index_of(const PlaceRef& p) const;  // BadParams when absent

    const std::vector<int>& at_zero() const { return o_zero_; }
    const std::vector<int>& at_infinity() const { return o_inf_; }
    const std::vector<int>& o_m() const { return o_m_; }
    const std::vector<int>& o_prime() const { return o_prime_; }
    const std::vector<int>& affine_off_o() const { return affine_off_o_; }

    Fe coset_rep(Fe w) const;  // smallest element of w mu_m

private:
    const FieldCtx* F_;
    long q_, m_, n_;
    std::vector<Fe> mu_m_;
    std::vector<PlaceRef> places_;
    std::unordered_map<uint64_t, int> index_;
    std::vector<int> o_zero_, o_inf_, o_m_, o_prime_, affine_off_o_;
};

// Exact valuations of the coordinate functions at any place, computed from
// local expansions (series route) rather than from the divisor propositions.
long valuation_x(const PlaceTable& T, const PlaceRef& P);
long valuation_y(const PlaceTable& T, const PlaceRef& P);
long valuation_x_minus(const PlaceTable& T, const PlaceRef& P, Fe a);
long valuation_y_minus(const PlaceTable& T, const PlaceRef& P, Fe b);

struct MonomialExpr {
    enum class Form { YiOverXMinusA, YmOverXXMinusA, XiYj };
    Form form = Form::XiYj;
    long i = 0, j = 0;
    Fe a;  // for the first two forms
};
long valuation_of_monomial_function(const PlaceTable& T, const MonomialExpr& e,
                                    const PlaceRef& at);  // UndefinedAtPlace

// Divisor supported on the rational places of the table.
class Divisor {
public:
    void add(int place_index, long c);
    long coeff(int place_index) const;
    long degree() const;
    const std::map<int, long>& entries() const { return c_; }
    friend bool operator==(const Divisor& a, const Divisor& b) { return a.c_ == b.c_; }

private:
    std::map<int, long> c_;
};

enum class PrincipalKind { X, XMinusA, Y, YMinusB };

// Divisor of x, x-a, y or y-b as asserted by the ramification propositions,
// verified against independently recomputed multiplicities (root orders of
// the defining polynomials at affine places, expansion valuations at
// infinity). For y-b with roots of x^{2n}+x^n+b^{q+1} outside F_{q^2} the
// rational part is returned and `irrational_degree` accounts for the rest.
struct PrincipalDivisor {
    Divisor div;
    long irrational_degree = 0;
};
PrincipalDivisor principal_divisor(const PlaceTable& T, PrincipalKind kind,
                                   const PlaceRef& anchor);  // DivisorMismatch

}  // namespace maxcurve
