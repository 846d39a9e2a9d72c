#pragma once

#include <vector>

#include "maxcurve/gf.hpp"

namespace maxcurve {

// Numerical semigroup given by generators, with the Apery set w.r.t. the
// multiplicity a precomputed: apery[v] = min{ s in S : s = v (mod a) }.
// genus() uses the Apery identity sum_v floor(apery[v]/a); membership is
// s in S  <=>  apery[s mod a] <= s.
class NumericalSemigroup {
public:
    // GcdNotOne when gcd of generators != 1, Empty on an empty set.
    static NumericalSemigroup from_generators(std::vector<long> gens);

    const std::vector<long>& generators() const { return gens_; }
    long multiplicity() const { return mult_; }
    const std::vector<long>& apery() const { return apery_; }
    long genus() const;
    long frobenius() const;  // -1 for S = N
    bool contains(long s) const;
    std::vector<long> gaps() const;
    std::vector<long> minimal_generators() const;
    // Equality as sets of elements (generator lists may differ).
    bool same_elements(const NumericalSemigroup& other) const;

private:
    std::vector<long> gens_;
    long mult_ = 0;
    std::vector<long> apery_;
};

// Brute-force gap count by membership sieve; independent oracle for genus().
long genus_by_gap_enumeration(const std::vector<long>& gens);

// The three semigroup families attached to the curve with parameters (q, m),
// m | q+1, 2 < m < q+1:
//   S(q,m) = <q+1-m> + <q+1-floor(m/2), ..., q+1>
//   T(q,m) = <q+1> + <q, q-2, ..., q+1-m>            (m odd)
//          = <(q+1)/2> + <q+1-m/2, ..., q>           (m even)
//   Q(I)   = <q-1, q, q+1> + <k(q+1)-(4k-1)-[k=I] : k = 1..min(I,(q+1)/4-1)>
NumericalSemigroup family_S(long q, long m);  // BadParams
NumericalSemigroup family_T(long q, long m);  // BadParams
NumericalSemigroup family_Q(long q, long I);  // BadParams; needs 4 | q+1, I | (q+1)/4

enum class WitnessSource { GenusP0, GenusPinf, BoundM4 };

// Explicit map f : {0..a-1} -> S with f(v) = v (mod a) and
// sum_{v>=1} floor(f(v)/a) equal to the curve genus; one construction per
// family (S, T, Q(I)). Validation checks congruence, membership and the sum.
struct WitnessMap {
    long a = 0;
    std::vector<long> table;  // f(0..a-1)
    WitnessSource source = WitnessSource::GenusP0;
};

// For GenusP0/GenusPinf the second parameter is m; for BoundM4 it is I.
// Throws WitnessViolation naming the first failing residue.
WitnessMap validate_witness(long q, long m_or_I, WitnessSource source);

}  // namespace maxcurve
