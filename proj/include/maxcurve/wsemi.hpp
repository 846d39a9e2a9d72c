#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "maxcurve/lseries.hpp"
#include "maxcurve/numsemi.hpp"
#include "maxcurve/places.hpp"

namespace maxcurve {

// P_k(s) = ( i(s+i)^{4k} - i(s-i)^{4k} ) / ( 2(s - s^2) )
// Q_k(s) = ( (1-i)(s+i)^{4k-1} + (1+i)(s-i)^{4k-1} ) / ( 2(s-1) ),  i^2 = -1.
// Both land in F_p[s] and are coprime for every k; coefficients are stored
// as integers mod p so they can be evaluated in any field of characteristic p.
struct PkQk {
    int k = 0;
    std::vector<int> P, Q;  // low-degree-first
};
std::vector<PkQk> build_pk_qk(long p, int k_max);  // DivisionNotExact

Fe eval_int_poly(const FieldCtx& F, const std::vector<int>& poly, Fe x);

enum class PlaceTag { OPrime, Iota, QOneZero, Generic };

// Classification of an affine rational place off O for m = 4 by
// alpha = a^{(q+1)/4} / (1 + a^{(q+1)/4}):
//   OPrime:   alpha = -1 (these have I = 1),
//   Iota:     alpha^2 = -1 (P_k(alpha) never vanishes; I is the scan bound),
//   QOneZero: Q_1(alpha) = 0 (I = 3 in practice),
//   Generic:  otherwise, I = min{k >= 1 : P_k(alpha) = 0}, a divisor of (q+1)/4.
// alpha lies in F_q unless the place is Iota (q = 3 mod 4 puts i outside F_q).
struct PlaceClass {
    PlaceTag tag = PlaceTag::Generic;
    Fe alpha;
    long I = 0;  // 0 for Iota
};
PlaceClass classify_place(const FieldCtx& F, long q, const PlaceRef& place,
                          const std::vector<PkQk>& pkqk);  // AlphaNotInSubfield, IndexNotFound

// Formal combination of monomials X^i Y^j together with its T-expansion at a
// place with the given alpha. The combination certifies membership in
// L(k (x)_infty) through per-monomial pole bounds at infinity.
class FunctionWord {
public:
    FunctionWord(const FieldCtx& F, int trunc)
        : expansion_(Series::zero(F, trunc)) {}

    std::map<std::pair<long, long>, Fe> combo;  // (i, j) -> coefficient of X^i Y^j
    Series expansion_;
    std::string name;

    const Series& expansion() const { return expansion_; }
    // max over monomials of (i*vx + j*vy), the pole order at one place of
    // O_infinity; membership in L(k (x)_infty) needs this <= k*vx.
    long pole_bound(long m) const;
    bool in_L_of_k_x_infty(long m, long k) const { return pole_bound(m) <= k * (m % 2 ? m : m / 2); }
};

// The tower f_1, ..., f_{k_max} with T-expansions
//   f_k = P_k(alpha) T^{4k-1} + Q_k(alpha) T^{4k} + O(T^q),
// built from the explicit f_1 and f_2, the solved f_3, and the two-term
// recurrence for k >= 4 (Iota places use the g_k recurrence instead, with
// f_k = 2^{4k-2} g_k). All expansions are verified against the displayed
// form; `notes` records any display that needed the solver fallback.
struct FSeqResult {
    std::vector<FunctionWord> f;  // f[k-1] is f_k
    std::vector<Fe> f3_coeffs;    // solver output over {f2, f1^2 Y, f1^2 Y^2, f1^3, f1 f2}
    std::vector<std::string> notes;
};
FSeqResult build_f_sequence(const FieldCtx& F, long q, Fe alpha, long k_max,
                            const std::vector<PkQk>& pkqk);  // HypothesisViolated, SolverSingular

// g_{2,7} = T^7 - ((alpha+1)/2) T^8 + O(T^q) and g_{3,12} = T^12 + O(T^q) at a
// place with Q_1(alpha) = 0 (only exists when q = -1 mod 12). g_{3,12} is
// solved over {Y..Y^6, X, XY, XY^3, XY^4} and omitted for q = 11 where
// 3(q+1)-12 = 2(q+1) is already redundant.
struct Q1ZeroFunctions {
    FunctionWord g27, g312;
    bool has_g312 = false;
    std::vector<Fe> g312_coeffs;  // solver output over {Y..Y^6, X, XY, XY^3, XY^4}
    std::vector<std::string> notes;
};
Q1ZeroFunctions build_q1zero_functions(const FieldCtx& F, long q, Fe alpha);

enum class OTag { O0, Om, OInf };

// Claimed Weierstrass semigroups: S(q,m) at O_0 and O_m, T(q,m) at
// O_infinity, and for m = 4 the class semigroups Q(I) (OPrime and Generic),
// Q((q+1)/4) (Iota) and Q(3) written with the explicit QOneZero generators.
// Throws GenusMismatch when the genus differs from the curve genus.
NumericalSemigroup claimed_semigroup_at(OTag tag, long q, long m);
NumericalSemigroup claimed_semigroup_at(const PlaceClass& cls, long q);

// First-row block of T-coefficients of Y, Y^2, ..., Y^{floor(m/2)}, X at
// exponents 1..m-1, from the series engine. detN is the minor from columns
// (1..floor(m/2)-1, m-2, m-1) for odd m and (1..m/2-2, m-3, m-2, m-1) for
// even m, with its two closed forms:
//   odd:  C(m,2) alpha^{(m-3)/2} (alpha+1)^{C((m-1)/2,2)}
//   even: (m/4) C(m,3) (1-alpha) alpha^{m-4} (alpha+1)^{C(m/2-1,2)+1}
struct MatrixM {
    std::vector<std::vector<Fe>> rows;
    long rank = 0;
    Fe detN_direct, detN_closed;
};
MatrixM matrix_M(const FieldCtx& F, long q, long m, Fe alpha);

// An element of H(P) strictly between (q+1)-m and (q+1)-floor(m/2), produced
// by Gaussian elimination on M (alpha != -1) or by Y-powers at O' places,
// with the checks that it avoids the claimed semigroups at O_0 and (via the
// parity route for odd m) O_infinity.
struct DistinguishReport {
    long element = 0;     // q+1-v for the eliminated function
    long valuation = 0;   // floor(m/2) < v < m
    bool not_in_S = false;
    bool distinct_from_T = false;
    long secondary = 0;   // the odd-m companion q+1-v(Y^2), 0 if unused
};
DistinguishReport distinguishing_element(const FieldCtx& F, long q, long m,
                                         const PlaceRef& place);  // RankDeficient

// Derived coefficient fixtures (f_3 and g_{3,12} solver outputs), keyed by
// (kind, p, q, alpha). One record per line:
//   kind \t p \t q \t alpha-digits \t coeff-digits \t coeff-digits ...
// with digit vectors in the deterministic field basis, comma-separated.
struct FixtureRecord {
    std::string kind;  // "f3" or "g312"
    long p = 0, q = 0;
    std::vector<int> alpha_digits;
    std::vector<std::vector<int>> coeffs;
};
std::vector<FixtureRecord> derive_fixtures(long q);
void write_fixtures(std::ostream& os, const std::vector<FixtureRecord>& recs);
std::vector<FixtureRecord> read_fixtures(std::istream& is);

}  // namespace maxcurve
