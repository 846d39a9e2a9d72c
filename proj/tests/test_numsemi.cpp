#include <numeric>
#include <random>

#include "doctest.h"
#include "maxcurve/curve.hpp"
#include "maxcurve/numsemi.hpp"

using namespace maxcurve;

TEST_CASE("small semigroups") {
    auto N = NumericalSemigroup::from_generators({1});
    CHECK(N.genus() == 0);
    CHECK(N.frobenius() == -1);

    auto S23 = NumericalSemigroup::from_generators({2, 3});
    CHECK(S23.gaps() == std::vector<long>{1});
    CHECK(S23.genus() == 1);

    CHECK(NumericalSemigroup::from_generators({5, 6, 7, 8}).genus() == 5);

    auto S = NumericalSemigroup::from_generators({4, 6, 7});
    CHECK(S.genus() == 5);
    CHECK(S.gaps() == std::vector<long>{1, 2, 3, 5, 9});
}

TEST_CASE("apery identity equals brute-force gap count; membership consistent") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long> gens;
        long g = 0;
        for (int i = 0; i < 4; ++i) {
            gens.push_back(2 + static_cast<long>(rng() % 40));
            g = std::gcd(g, gens.back());
        }
        if (g != 1) gens.push_back(g + 1);  // force gcd 1 most of the time
        long total_gcd = 0;
        for (long x : gens) total_gcd = std::gcd(total_gcd, x);
        if (total_gcd != 1) continue;
        auto S = NumericalSemigroup::from_generators(gens);
        CHECK(S.genus() == genus_by_gap_enumeration(gens));
        const long a = S.multiplicity();
        for (long v = 0; v < a; ++v) {
            CHECK(S.apery()[v] % a == v);
            if (v) CHECK_FALSE(S.contains(S.apery()[v] - a));
        }
        for (long s = 0; s < 3 * S.frobenius() + 6; ++s)
            CHECK(S.contains(s) == (S.apery()[s % a] <= s));
    }
}

TEST_CASE("family S") {
    CHECK(family_S(7, 4).genus() == 5);
    CHECK(family_S(7, 4).same_elements(NumericalSemigroup::from_generators({4, 6, 7})));
    CHECK(family_S(11, 4).genus() == 13);
    CHECK(family_S(11, 4).generators() == std::vector<long>{8, 10, 11, 12});
    CHECK(family_S(9, 5).genus() == 8);
    CHECK(family_S(9, 5).generators() == std::vector<long>{5, 8, 9, 10});
}

TEST_CASE("family T") {
    CHECK(family_T(7, 4).genus() == 5);
    CHECK(family_T(7, 4).generators() == std::vector<long>{4, 6, 7});
    CHECK(family_T(9, 5).genus() == 8);
    CHECK(family_T(9, 5).generators() == std::vector<long>{5, 7, 9, 10});
    CHECK(family_T(11, 6).genus() == 9);
    CHECK(family_T(11, 6).generators() == std::vector<long>{6, 9, 10, 11});
    CHECK(curve_genus(11, 2) == 9);
}

TEST_CASE("family Q") {
    CHECK(family_Q(7, 2).same_elements(NumericalSemigroup::from_generators({5, 6, 7, 8})));
    CHECK(family_Q(7, 2).genus() == 5);
    CHECK(family_Q(11, 1).generators() == std::vector<long>{8, 10, 11, 12});
    CHECK(family_Q(11, 1).genus() == 13);
    CHECK(family_Q(11, 3).genus() == 13);
    CHECK(family_Q(11, 3).generators() == std::vector<long>{9, 10, 11, 12, 17});
}

TEST_CASE("witness maps") {
    auto w = validate_witness(7, 4, WitnessSource::GenusP0);
    long sum = 0;
    for (long v = 1; v < w.a; ++v) sum += w.table[v] / w.a;
    CHECK(sum == 5);

    auto wb = validate_witness(11, 1, WitnessSource::BoundM4);
    CHECK(wb.a == 8);
    CHECK(wb.table[1] == 33);

    CHECK_NOTHROW(validate_witness(9, 5, WitnessSource::GenusPinf));
    CHECK_NOTHROW(validate_witness(23, 2, WitnessSource::BoundM4));
    CHECK_NOTHROW(validate_witness(7, 2, WitnessSource::BoundM4));
}

TEST_CASE("errors") {
    CHECK_THROWS_WITH_AS(NumericalSemigroup::from_generators({}), doctest::Contains("Empty"),
                         Error);
    CHECK_THROWS_WITH_AS(NumericalSemigroup::from_generators({4, 6}),
                         doctest::Contains("GcdNotOne"), Error);
    CHECK_THROWS_WITH_AS(family_S(7, 8), doctest::Contains("BadParams"), Error);
    CHECK_THROWS_WITH_AS(family_Q(11, 2), doctest::Contains("BadParams"), Error);
}
