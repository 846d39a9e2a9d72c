#pragma once

#include <map>

#include "maxcurve/gf.hpp"

namespace maxcurve {

// Rational-point census of the nonsingular model of y^{q+1} = x^n(x^n + 1)
// over F_{q^2}. The affine locus with x != 0 is smooth; the singular points
// (0,0) and the point at infinity contribute one place per branch, namely
// gcd(q+1, n) branches over x = 0 and gcd(q+1, 2n) over x = infinity, all
// F_{q^2}-rational (see count_rational_points for the derivation).
struct PointCount {
    long affine_x_nonzero = 0;
    long branches_at_zero = 0;
    long branches_at_infinity = 0;
    long total = 0;
};

// Genus of the nonsingular model:
//   g = ( n(q+1) - n - gcd(q+1,n) - gcd(q+1,2n) + 2 ) / 2
// from the Kummer data of y^{q+1} = f(x), f = x^n(x^n+1): v = n at x = 0,
// n simple roots of x^n + 1, v = -2n at infinity. When m = (q+1)/n is an
// integer this equals (q^2-q+2m-2)/2m for m odd and (q^2-2q+2m-3)/2m for m
// even. Requires gcd(n,q) = 1 and (q odd or n | q+1).
long curve_genus(long q, long n);  // BadParams

PointCount count_rational_points(const FieldCtx& F, long n);  // TooLarge
// The classification: maximal iff n | q+1 (for odd q, gcd(2n,q) = 1).
bool is_maximal_by_theorem(long q, long n);  // GcdViolation on gcd(2n,q) != 1
bool is_maximal_by_count(const FieldCtx& F, long n);

// The covering H -> X, (a,b) |-> (a^m, ab), with H : y^{q+1} = x^{q+1} + 1.
// Every affine H-point lands on the curve; every nonempty fiber over an
// affine curve point with x != 0 has exactly m elements.
struct CoverReport {
    long m = 0;
    long hermitian_affine_nonzero = 0;  // H-points with a != 0
    long fibers_of_size_m = 0;          // curve points with a full fiber
    long empty_fibers = 0;              // curve points with no rational preimage
    long degenerate_a_zero = 0;         // H-points with a = 0 (all map to (0,0))
    std::map<long, long> fiber_histogram;
};
CoverReport hermitian_cover_check(const FieldCtx& F, long n);  // CoverViolation

}  // namespace maxcurve
