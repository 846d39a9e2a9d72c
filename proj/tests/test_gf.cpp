#include "doctest.h"
#include "maxcurve/gf.hpp"

using namespace maxcurve;

TEST_CASE("deterministic construction and the forced small moduli") {
    FieldCtx F1 = FieldCtx::make(3, 1);
    FieldCtx F2 = FieldCtx::make(3, 1);
    CHECK(F1.modulus_q2() == F2.modulus_q2());
    CHECK(F1.generator().v == F2.generator().v);
    // smallest monic irreducible of degree 2 over F_3 is x^2 + 1
    CHECK(F1.modulus_q2() == std::vector<int>{1, 0, 1});
    CHECK(F1.q() == 3);
    CHECK(F1.q2() == 9);

    FieldCtx F16 = FieldCtx::make(2, 2);  // q = 4
    CHECK(F16.q2() == 16);
    CHECK(F16.order(F16.generator()) == 15);
}

TEST_CASE("arithmetic laws in F_49") {
    FieldCtx F = FieldCtx::make(7, 1);
    CHECK(F.order(F.generator()) == 48);
    for (long i = 1; i < F.q2(); ++i) {
        Fe x = F.element(i);
        CHECK(F.mul(x, F.inv(x)) == F.one());
        CHECK(F.pow(x, F.q2() - 1) == F.one());
    }
    // e^q = e exactly on the subfield F_q
    long in_subfield = 0;
    for (long i = 0; i < F.q2(); ++i)
        if (F.in_subfield_q(F.element(i))) ++in_subfield;
    CHECK(in_subfield == F.q());
}

TEST_CASE("frobenius is an automorphism fixing exactly q elements") {
    for (long q : {9L, 25L, 27L}) {
        FieldCtx F = field_for_q(q);
        long fixed = 0;
        for (long i = 0; i < F.q2(); ++i) {
            Fe x = F.element(i);
            Fe y = F.element((i * 7 + 3) % F.q2());
            CHECK(F.frobenius_q(F.mul(x, y)) == F.mul(F.frobenius_q(x), F.frobenius_q(y)));
            CHECK(F.frobenius_q(F.add(x, y)) == F.add(F.frobenius_q(x), F.frobenius_q(y)));
            if (F.frobenius_q(x) == x) ++fixed;
        }
        CHECK(fixed == q);
    }
}

TEST_CASE("roots of unity have exact order, for every divisor") {
    FieldCtx F = FieldCtx::make(7, 1);
    for (long d = 1; d <= F.q2() - 1; ++d) {
        if ((F.q2() - 1) % d) continue;
        Fe w = F.root_of_unity(d);
        CHECK(F.order(w) == d);
    }
    CHECK(F.root_of_unity(2) == F.neg(F.one()));
    Fe xi = F.root_of_unity(8);
    CHECK(F.pow(xi, 8) == F.one());
    CHECK(F.pow(xi, 4) != F.one());
    CHECK_THROWS_WITH_AS(F.root_of_unity(5), doctest::Contains("OrderNotDividing"), Error);
}

TEST_CASE("nth_roots cardinalities") {
    FieldCtx F = FieldCtx::make(7, 1);
    long q = F.q();
    CHECK(F.nth_roots(F.one(), q + 1).size() == static_cast<size_t>(q + 1));
    CHECK(F.nth_roots(F.zero(), 5) == std::vector<Fe>{F.zero()});
    // a non-square has no square roots; squares have exactly two
    long with = 0, without = 0;
    for (long i = 1; i < F.q2(); ++i) {
        auto r = F.nth_roots(F.element(i), 2);
        if (r.empty()) ++without;
        else {
            CHECK(r.size() == 2);
            CHECK(F.mul(r[0], r[0]) == F.element(i));
            ++with;
        }
    }
    CHECK(with == without);
}

TEST_CASE("error paths") {
    CHECK_THROWS_WITH_AS(FieldCtx::make(6, 1), doctest::Contains("NonPrime"), Error);
    CHECK_THROWS_WITH_AS(FieldCtx::make(2, 17), doctest::Contains("TooLarge"), Error);
    FieldCtx F = FieldCtx::make(5, 1);
    CHECK_THROWS_WITH_AS(F.inv(F.zero()), doctest::Contains("DivideByZero"), Error);
    FieldCtx G = FieldCtx::make(5, 1);
    CHECK_THROWS_WITH_AS(F.add(F.one(), G.one()), doctest::Contains("CtxMismatch"), Error);
}
