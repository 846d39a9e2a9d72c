#include "doctest.h"
#include "maxcurve/lseries.hpp"

using namespace maxcurve;

TEST_CASE("series arithmetic basics") {
    FieldCtx F = FieldCtx::make(7, 1);
    const int t = 12;
    Series one = Series::constant(F, F.one(), t);
    Series T = Series::monomial(F, F.one(), 1, t);

    // (1 + T) * (1 - T + T^2 - ...) = 1 + O(T^t)
    Series geom = (one + T).inverse();
    Series prod = (one + T) * geom;
    CHECK(prod.coeff(0) == F.one());
    for (int e = 1; e < t; ++e) CHECK(F.is_zero(prod.coeff(e)));

    // ((T+1)^4 - 1) = 4T + 6T^2 + 4T^3 + T^4 exactly
    Series X = (T + one).pow(4) - one;
    CHECK(X.valuation() == 1);
    CHECK(X.coeff(1) == F.from_int(4));
    CHECK(X.coeff(2) == F.from_int(6));
    CHECK(X.coeff(3) == F.from_int(4));
    CHECK(X.coeff(4) == F.one());
    for (int e = 5; e < t; ++e) CHECK(F.is_zero(X.coeff(e)));

    // valuation of T^3 * unit
    CHECK((Series::monomial(F, F.from_int(2), 3, t) * geom).valuation() == 3);

    CHECK_THROWS_WITH_AS(Series::zero(F, t).inverse(), doctest::Contains("ZeroLeading"), Error);
    CHECK_THROWS_WITH_AS(Series::zero(F, t).valuation(), doctest::Contains("PrecisionExhausted"),
                         Error);
    CHECK_THROWS_WITH_AS(T.coeff(t), doctest::Contains("PrecisionExhausted"), Error);
}

TEST_CASE("hensel lifting") {
    FieldCtx F = FieldCtx::make(7, 1);
    const long q = 7;
    const int t = 10;

    SUBCASE("s^{q+1} = 1 + t^3 with s(0) = 1") {
        std::vector<Series> cond(static_cast<size_t>(q + 2), Series::zero(F, t));
        cond[0] = -(Series::constant(F, F.one(), t) + Series::monomial(F, F.one(), 3, t));
        cond[static_cast<size_t>(q + 1)] = Series::constant(F, F.one(), t);
        Series s = hensel_solve(F, cond, F.one(), t);
        // first correction is t^3 / (q+1); 8 = 1 in F_7
        CHECK(s.coeff(0) == F.one());
        CHECK(s.coeff(3) == F.inv(F.from_int(8)));
        CHECK(s.coeff(3) == F.one());
        // substitute back
        Series lhs = s.pow(q + 1);
        CHECK(lhs.coeff(0) == F.one());
        CHECK(lhs.coeff(3) == F.one());
        for (int e : {1, 2, 4, 5}) CHECK(F.is_zero(lhs.coeff(e)));
    }

    SUBCASE("s^2 = 1 + t is the binomial series") {
        std::vector<Series> cond{-(Series::constant(F, F.one(), t) + Series::monomial(F, F.one(), 1, t)),
                                 Series::zero(F, t), Series::constant(F, F.one(), t)};
        Series s = hensel_solve(F, cond, F.one(), t);
        CHECK(s.coeff(1) == F.inv(F.from_int(2)));
        CHECK(s.coeff(2) == F.neg(F.inv(F.from_int(8))));
    }

    SUBCASE("wrong initial root is rejected") {
        std::vector<Series> cond{-(Series::constant(F, F.one(), t) + Series::monomial(F, F.one(), 3, t)),
                                 Series::zero(F, t), Series::constant(F, F.one(), t)};
        // s(0) = 3 has 3^2 = 2 != 1
        CHECK_THROWS_WITH_AS(hensel_solve(F, cond, F.from_int(3), t),
                             doctest::Contains("SingularLift"), Error);
    }
}

TEST_CASE("expansion of x at infinity, m even") {
    for (auto [q, m] : {std::pair<long, long>{7, 4}, {11, 4}}) {
        FieldCtx F = field_for_q(q);
        const long n2 = 2 * (q + 1) / m;
        auto roots = F.nth_roots(F.neg(F.one()), n2);
        REQUIRE(roots.size() == static_cast<size_t>(n2));
        for (Fe al : roots) {
            auto ex = expand_x_at_infinity(F, q, m, al);
            CHECK(ex.x.valuation() == -m / 2);
            CHECK(ex.x.coeff(static_cast<int>(-m / 2)) == al);
            for (int e = static_cast<int>(-m / 2) + 1; e < static_cast<int>((q + 1 - m) / 2); ++e)
                CHECK(F.is_zero(ex.x.coeff(e)));
            Fe rel = F.add(F.mul(F.from_int(n2), F.mul(F.pow(al, n2 - 1), ex.beta)),
                           F.pow(al, n2 / 2));
            CHECK(F.is_zero(rel));
        }
        CHECK_THROWS_WITH_AS(expand_x_at_infinity(F, q, m, F.one()),
                             doctest::Contains("NotABranchRoot"), Error);
    }
}

TEST_CASE("affine expansions: X binomials, Y two-term form") {
    for (long q : {7L, 11L}) {
        FieldCtx F = field_for_q(q);
        for (long m = 3; m < q + 1; ++m) {
            if ((q + 1) % m) continue;
            const long n = (q + 1) / m;
            long tested = 0;
            for (long i = 1; i < F.q2() && tested < 6; ++i) {
                Fe a = F.element(i);
                Fe z = F.pow(a, n);
                if (F.is_zero(F.add(z, F.one()))) continue;
                Fe c = F.neg(F.add(F.mul(z, z), z));
                if (F.is_zero(c) || F.pow(c, q - 1) != F.one()) continue;
                Fe b = F.nth_roots(c, q + 1).front();
                auto ex = expand_xy_at_place(F, q, m, a, b, static_cast<int>(q));
                ++tested;
                for (long j = 1; j <= m; ++j) {
                    long bin = 1;
                    for (long r = 1; r <= j; ++r) bin = bin * (m - j + r) / r;
                    CHECK(ex.X.coeff(static_cast<int>(j)) == F.from_int(bin));
                }
                CHECK(ex.Y.coeff(1) == F.add(F.one(), ex.alpha));
                CHECK(ex.Y.coeff(2) == ex.alpha);
                for (int e = 3; e < static_cast<int>(q); ++e) CHECK(F.is_zero(ex.Y.coeff(e)));
                // at O' places alpha = -1 and Y = -T^2 + O(T^q)
                if (F.is_zero(F.add(F.add(z, z), F.one()))) {
                    CHECK(ex.alpha == F.neg(F.one()));
                    CHECK(ex.Y.valuation() == 2);
                }
            }
        }
    }
}

TEST_CASE("hermitian-coordinate interface") {
    FieldCtx F = field_for_q(7);
    const long q = 7, m = 4;
    // find a rational Hermitian point with AB != 0
    for (long i = 1; i < F.q2(); ++i) {
        Fe A = F.element(i);
        Fe rhs = F.neg(F.add(F.pow(A, q + 1), F.one()));
        if (F.is_zero(rhs)) continue;
        auto bs = F.nth_roots(rhs, q + 1);
        if (bs.empty()) continue;
        Fe B = bs.front();
        auto ex = expand_xy_at_affine_place(F, q, m, A, B, static_cast<int>(q));
        Fe a = F.pow(A, m);
        Fe alpha_want = F.mul(F.pow(a, 2), F.inv(F.add(F.one(), F.pow(a, 2))));
        CHECK(ex.alpha == alpha_want);
        break;
    }
    CHECK_THROWS_WITH_AS(expand_xy_at_affine_place(F, q, m, F.one(), F.one(), 7),
                         doctest::Contains("NotOnHermitian"), Error);
    CHECK_THROWS_WITH_AS(expand_xy_at_place(F, q, m, F.one(), F.one(), 9),
                         doctest::Contains("TruncationBeyondQ"), Error);
}
