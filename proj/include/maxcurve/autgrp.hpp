#pragma once

#include <string>
#include <vector>

#include "maxcurve/places.hpp"

namespace maxcurve {

// An automorphism as a permutation of the rational-place list, together with
// the word in the generators theta_{gamma,delta}, theta_2, theta_4 it came
// from. Boundary actions are computed through the Hermitian-orbit/branch
// representation: each generator lifts to the Hermitian cover, the preimage
// data is pushed through the lift, and the image orbit is re-identified.
struct AutoMap {
    std::string word;
    std::vector<int32_t> perm;
};

// theta_{gamma,delta}(x,y) = (gamma x, delta y); needs gamma^{(q+1)/m} = 1 and
// delta^{q+1} = 1. On O_0 it maps the eta-coset by delta c^{-1} (c^m = gamma),
// on O_infinity by alpha -> gamma delta^{-m/2} alpha (m even) or the w-coset
// by delta c^{-2} (m odd).
AutoMap diag_map(const PlaceTable& T, Fe gamma, Fe delta);  // BadParams

// theta_2(x,y) = (y^m/x, y); lifts to (u,v) -> (v,u), exchanging O_0 and O_m
// ([eta] -> P_(eta^m, 0), P_(a,0) -> [A] with A^m = a) and inverting the
// branch datum on O_infinity.
AutoMap theta2_map(const PlaceTable& T);

// theta_4(x,y) = (d1 x / y^{(q+1)/4} + d2 y^{(q+1)/4} / x, d3 / y) on the
// curve with m = (q+1)/2 even, with d3^{q+1} = 1/16, d2^4 = -1/16,
// d1 = -(4 d2)^{-1}. find_theta4_params also imposes d3^{(q+1)/2} = 1/4 and
// picks the lexicographically first (d2, d3).
struct Theta4Params {
    Fe d1, d2, d3;
};
Theta4Params find_theta4_params(const FieldCtx& F, long q);  // NoSolution
AutoMap theta4_map(const PlaceTable& T, const Theta4Params& par);  // UndefinedBoundaryAction

PlaceRef apply(const PlaceTable& T, const AutoMap& map, const PlaceRef& place);
AutoMap compose(const PlaceTable& T, const AutoMap& first, const AutoMap& then);

// Closure of the generated permutation group, with orbit partition.
struct Closure {
    long order = 0;
    std::vector<std::vector<int>> orbits;
};
Closure group_closure(const PlaceTable& T, const std::vector<AutoMap>& gens,
                      long cap = 10'000'000);  // ClosureTooLarge

// Orbit structure of the known subgroup: A acts transitively on each of O_0,
// O_infinity, O_m; adding theta_2 merges O_0 and O_m; O' is a single orbit;
// for m = (q+1)/2 even adding theta_4 merges all of O.
struct OrbitReport {
    long order_A = 0;
    long order_G = 0;        // <A, theta_2>
    long order_G4 = 0;       // <A, theta_4>, 0 unless the theta_4 regime
    bool o0_transitive = false;
    bool oinf_transitive = false;
    bool om_transitive = false;
    bool o0_om_merged = false;
    bool oprime_single_orbit = false;  // vacuously true when O' is empty
    bool o_single_orbit_theta4 = false;
    long oprime_size = 0;
    long stabilizer_pa0 = 0;  // |G_{P_(a,0)}| inside <A, theta_2>
};
OrbitReport orbit_report(const PlaceTable& T, bool with_theta4);  // OrbitMismatch

}  // namespace maxcurve
