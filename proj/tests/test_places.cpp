#include "doctest.h"
#include "maxcurve/curve.hpp"
#include "maxcurve/places.hpp"

using namespace maxcurve;

TEST_CASE("place census") {
    FieldCtx F7 = field_for_q(7);
    PlaceTable T74(F7, 7, 4);
    CHECK(T74.at_zero().size() == 2);
    CHECK(T74.at_infinity().size() == 4);
    CHECK(T74.o_m().size() == 2);
    CHECK(T74.size() == 120);
    CHECK(T74.o_prime().size() == 16);  // (q+1)^2/m

    FieldCtx F9 = field_for_q(9);
    PlaceTable T95(F9, 9, 5);
    CHECK(T95.at_zero().size() == 2);
    CHECK(T95.at_infinity().size() == 2);
    CHECK(T95.o_m().size() == 2);

    FieldCtx F11 = field_for_q(11);
    PlaceTable T114(F11, 11, 4);
    CHECK(T114.o_prime().size() == 36);  // (q+1)^2/m; one mu_3-orbit of a-values
}

TEST_CASE("totals agree with the point count") {
    for (auto [q, m] : {std::pair<long, long>{7, 4}, {9, 5}, {11, 4}, {11, 6}, {13, 7}, {8, 3},
                        {19, 5}, {23, 8}, {25, 13}, {27, 4}}) {
        FieldCtx F = field_for_q(q);
        PlaceTable T(F, q, m);
        long g = curve_genus(q, (q + 1) / m);
        CHECK(T.size() == q * q + 1 + 2 * q * g);
        if (q % 2) CHECK(T.size() == count_rational_points(F, (q + 1) / m).total);
    }
}

TEST_CASE("principal divisors match the displayed forms") {
    FieldCtx F7 = field_for_q(7);
    PlaceTable T(F7, 7, 4);

    SUBCASE("(x) = m sum P_0^i - (m/2) D_inf, degree 0") {
        auto pd = principal_divisor(T, PrincipalKind::X, PlaceRef{});
        CHECK(pd.div.degree() == 0);
        for (int i : T.at_zero()) CHECK(pd.div.coeff(i) == 4);
        for (int i : T.at_infinity()) CHECK(pd.div.coeff(i) == -2);
    }

    SUBCASE("(y) and (y - b)") {
        CHECK_NOTHROW(principal_divisor(T, PrincipalKind::Y, PlaceRef{}));
        // anchor at an O' point: some root of x^{2n}+x^n+b^{q+1} is a double root
        REQUIRE_FALSE(T.o_prime().empty());
        const PlaceRef& P = T.all()[static_cast<size_t>(T.o_prime().front())];
        auto pd = principal_divisor(T, PrincipalKind::YMinusB, P);
        CHECK(pd.div.coeff(T.index_of(P)) == 2);
        long ebdeg = 0;
        for (auto& [i, c] : pd.div.entries())
            if (c > 0) ebdeg += c;
        CHECK(ebdeg + std::max<long>(pd.irrational_degree, 0) == 2 * (7 + 1) / 4);
    }

    SUBCASE("(x - a) through a nonramified fiber") {
        REQUIRE_FALSE(T.affine_off_o().empty());
        const PlaceRef& P = T.all()[static_cast<size_t>(T.affine_off_o().front())];
        auto pd = principal_divisor(T, PrincipalKind::XMinusA, P);
        CHECK(pd.div.degree() == 0);
        CHECK(pd.div.coeff(T.index_of(P)) == 1);
    }

    SUBCASE("(x - a) at a totally ramified fiber") {
        const PlaceRef& P = T.all()[static_cast<size_t>(T.o_m().front())];
        auto pd = principal_divisor(T, PrincipalKind::XMinusA, P);
        CHECK(pd.div.coeff(T.index_of(P)) == 8);  // q+1
        CHECK(pd.div.degree() == 0);
    }
}

TEST_CASE("odd-m principal divisors") {
    FieldCtx F9 = field_for_q(9);
    PlaceTable T(F9, 9, 5);
    auto pd = principal_divisor(T, PrincipalKind::Y, PlaceRef{});
    for (int i : T.at_zero()) CHECK(pd.div.coeff(i) == 1);
    for (int i : T.o_m()) CHECK(pd.div.coeff(i) == 1);
    for (int i : T.at_infinity()) CHECK(pd.div.coeff(i) == -2);
    CHECK(pd.div.degree() == 0);
}

TEST_CASE("E_b has degree 2(q+1)/m for every b") {
    for (auto [q, m] : {std::pair<long, long>{7, 4}, {9, 5}}) {
        FieldCtx F = field_for_q(q);
        PlaceTable T(F, q, m);
        std::vector<int> pool = T.o_prime();
        pool.insert(pool.end(), T.affine_off_o().begin(), T.affine_off_o().end());
        for (size_t s = 0; s < std::min<size_t>(10, pool.size()); ++s) {
            const PlaceRef& P = T.all()[static_cast<size_t>(pool[s])];
            auto pd = principal_divisor(T, PrincipalKind::YMinusB, P);
            long ebdeg = 0;
            for (auto& [i, c] : pd.div.entries())
                if (c > 0) ebdeg += c;
            CHECK(ebdeg + pd.irrational_degree == 2 * (q + 1) / m);
        }
    }
}

TEST_CASE("valuations of the named functions") {
    FieldCtx F7 = field_for_q(7);
    PlaceTable T(F7, 7, 4);
    const PlaceRef& Pa0 = T.all()[static_cast<size_t>(T.o_m().front())];

    MonomialExpr e1{MonomialExpr::Form::YiOverXMinusA, 1, 0, Pa0.a};
    CHECK(valuation_of_monomial_function(T, e1, Pa0) == -(7 + 1 - 1));

    MonomialExpr e2{MonomialExpr::Form::YmOverXXMinusA, 0, 0, Pa0.a};
    CHECK(valuation_of_monomial_function(T, e2, Pa0) == -(7 + 1 - 4));

    const PlaceRef& Pinf = T.all()[static_cast<size_t>(T.at_infinity().front())];
    MonomialExpr e3{MonomialExpr::Form::XiYj, 1, 0, F7.zero()};
    CHECK(valuation_of_monomial_function(T, e3, Pinf) == -2);

    // y^i/(x-a) for i = 0..floor(m/2) has pole order q+1-i at P_(a,0)
    for (long i = 0; i <= 2; ++i) {
        MonomialExpr e{MonomialExpr::Form::YiOverXMinusA, i, 0, Pa0.a};
        CHECK(valuation_of_monomial_function(T, e, Pa0) == -(7 + 1 - i));
    }

    // whole-divisor check for y^m/(x(x-a)): poles only at P_(a,0)
    long total = 0;
    for (long i = 0; i < T.size(); ++i) {
        long v = valuation_of_monomial_function(T, e2, T.all()[static_cast<size_t>(i)]);
        total += v;
        if (v < 0) CHECK(i == T.index_of(Pa0));
    }
    CHECK(total == 0);
}
