#pragma once

#include "maxcurve/report.hpp"

namespace maxcurve::verify {

// The ten verification criteria, with their default parameter ranges pinned.
// `qmax` clips every q-sweep from above (small values give quick smoke runs);
// the full gate uses qmax = 64. `jobs` sizes the worker pool for the
// embarrassingly parallel sweeps.
RunReport maximality_classification(long qmax = 64, int jobs = 1);   // 1
RunReport genus_displays(long qmax = 64);                            // 2
RunReport semigroup_genera_and_witnesses(long qmax = 64);            // 3
RunReport q_family_genera(long qmax = 64);                           // 4
RunReport expansion_lemma(long qmax = 64);                           // 5
RunReport m4_place_classification(long qmax = 64, int jobs = 1);     // 6
RunReport q1zero_regime(long qmax = 64);                             // 7
RunReport matrix_criterion(long qmax = 64);                          // 8
RunReport automorphism_orders_orbits(long qmax = 64, int jobs = 1);  // 9
RunReport semigroup_distinctness(long qmax = 64);                    // 10

RunReport run_criterion(int number, long qmax = 64, int jobs = 1);
inline constexpr int kCriteria = 10;

}  // namespace maxcurve::verify
