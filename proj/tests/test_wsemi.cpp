#include <fstream>
#include <sstream>

#include "doctest.h"
#include "maxcurve/curve.hpp"
#include "maxcurve/wsemi.hpp"

using namespace maxcurve;

namespace {

// numeric polynomial gcd degree over F_p
long gcd_degree(long p, std::vector<int> a, std::vector<int> b) {
    auto deg = [&](const std::vector<int>& u) {
        long d = static_cast<long>(u.size()) - 1;
        while (d >= 0 && u[static_cast<size_t>(d)] % p == 0) --d;
        return d;
    };
    auto inv = [&](long x) {
        long r = 1, e = p - 2, base = ((x % p) + p) % p;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    while (deg(b) >= 0) {
        long da = deg(a), db = deg(b);
        if (da < db) { std::swap(a, b); continue; }
        long c = a[static_cast<size_t>(da)] * inv(b[static_cast<size_t>(db)]) % p;
        for (long j = 0; j <= db; ++j)
            a[static_cast<size_t>(da - db + j)] =
                ((a[static_cast<size_t>(da - db + j)] - c * b[static_cast<size_t>(j)]) % p + p) % p;
        if (deg(a) < deg(b)) std::swap(a, b);
    }
    return deg(a);
}

PlaceClass classify_at(const FieldCtx& F, long q, const PlaceTable& T, int idx,
                       const std::vector<PkQk>& pkqk) {
    return classify_place(F, q, T.all()[static_cast<size_t>(idx)], pkqk);
}

}  // namespace

TEST_CASE("P_k and Q_k") {
    for (long p : {7L, 11L, 19L, 23L}) {
        auto pk = build_pk_qk(p, 8);
        CHECK(pk[0].P == std::vector<int>{static_cast<int>(4 % p), static_cast<int>(4 % p)});
        CHECK(pk[0].Q == std::vector<int>{1, static_cast<int>(4 % p), 1});
        for (auto& rec : pk) CHECK(gcd_degree(p, rec.P, rec.Q) == 0);
    }
}

TEST_CASE("classification at q = 11") {
    const long q = 11;
    FieldCtx F = field_for_q(q);
    auto pkqk = build_pk_qk(F.p(), 4);
    PlaceTable T(F, q, 4);

    std::map<std::string, long> hist;
    for (int i : T.o_prime()) {
        PlaceClass cls = classify_at(F, q, T, i, pkqk);
        CHECK(cls.tag == PlaceTag::OPrime);
        CHECK(cls.I == 1);
        CHECK(cls.alpha == F.neg(F.one()));
    }
    for (int i : T.affine_off_o()) {
        PlaceClass cls = classify_at(F, q, T, i, pkqk);
        if (cls.tag == PlaceTag::Iota) {
            ++hist["iota"];
            // P_k(iota) = 2^{4k-2}(iota + 1)
            for (long k = 1; k <= 3; ++k) {
                Fe want = F.mul(F.pow(F.from_int(2), 4 * k - 2), F.add(cls.alpha, F.one()));
                CHECK(eval_int_poly(F, pkqk[static_cast<size_t>(k - 1)].P, cls.alpha) == want);
            }
        } else {
            CHECK((cls.I == 1 || cls.I == 3));
            ++hist["I=" + std::to_string(cls.I)];
        }
    }
    CHECK(hist["iota"] > 0);
    CHECK(hist["I=3"] > 0);
}

TEST_CASE("f sequence valuations") {
    for (long q : {11L, 19L}) {
        FieldCtx F = field_for_q(q);
        const long c4 = (q + 1) / 4;
        auto pkqk = build_pk_qk(F.p(), static_cast<int>(c4) + 1);
        PlaceTable T(F, q, 4);
        long tested = 0;
        for (int i : T.affine_off_o()) {
            if (tested >= 8) break;
            PlaceClass cls = classify_at(F, q, T, i, pkqk);
            long kmax = cls.tag == PlaceTag::Iota        ? c4 - 1
                        : cls.tag == PlaceTag::QOneZero ? 1
                                                         : std::min(cls.I, c4 - 1);
            auto seq = build_f_sequence(F, q, cls.alpha, kmax, pkqk);
            CHECK(seq.notes.empty());  // displayed formulas hold as printed
            for (long k = 1; k <= kmax; ++k) {
                long want = 4 * k - 1 + (cls.tag != PlaceTag::Iota && k == cls.I ? 1 : 0);
                CHECK(seq.f[static_cast<size_t>(k - 1)].expansion().valuation() == want);
                CHECK(seq.f[static_cast<size_t>(k - 1)].in_L_of_k_x_infty(4, k));
            }
            ++tested;
        }
        CHECK(tested > 0);
    }
}

TEST_CASE("q1zero functions at q = 23") {
    const long q = 23;
    FieldCtx F = field_for_q(q);
    auto pkqk = build_pk_qk(F.p(), 7);
    PlaceTable T(F, q, 4);
    long found = 0;
    for (int i : T.affine_off_o()) {
        PlaceClass cls = classify_at(F, q, T, i, pkqk);
        if (cls.tag != PlaceTag::QOneZero) continue;
        ++found;
        CHECK(cls.I == 3);
        auto fns = build_q1zero_functions(F, q, cls.alpha);
        CHECK(fns.g27.expansion().valuation() == 7);
        CHECK(fns.g27.expansion().coeff(7) == F.one());
        Fe want8 = F.neg(F.mul(F.add(cls.alpha, F.one()), F.inv(F.from_int(2))));
        CHECK(fns.g27.expansion().coeff(8) == want8);
        CHECK(fns.has_g312);
        CHECK(fns.g312.expansion().valuation() == 12);
        // the printed g27 display carries a sign slip in its last coefficient,
        // so the solver fallback is expected to engage
        CHECK(fns.notes.size() == 1);
        break;
    }
    CHECK(found > 0);
}

TEST_CASE("claimed semigroups carry the curve genus") {
    CHECK(claimed_semigroup_at(OTag::O0, 7, 4).generators() ==
          std::vector<long>{4, 6, 7, 8});
    CHECK(claimed_semigroup_at(OTag::O0, 7, 4).genus() == 5);
    CHECK(claimed_semigroup_at(OTag::OInf, 11, 6).genus() == curve_genus(11, 2));
    PlaceClass cls{PlaceTag::Generic, field_for_q(11).one(), 1};
    CHECK(claimed_semigroup_at(cls, 11).generators() == std::vector<long>{8, 10, 11, 12});
}

TEST_CASE("matrix M determinants and rank") {
    SUBCASE("m = 5: detN = 10 alpha (alpha+1)") {
        FieldCtx F = field_for_q(9);
        for (long i = 2; i < 30; ++i) {
            Fe alpha = F.element(i);
            if (F.is_zero(alpha) || alpha == F.one()) continue;
            MatrixM M = matrix_M(F, 9, 5, alpha);
            Fe want = F.mul(F.from_int(10), F.mul(alpha, F.add(alpha, F.one())));
            CHECK(M.detN_direct == want);
            CHECK(M.detN_closed == want);
        }
    }
    SUBCASE("m = 6: detN = 30 (1-alpha) alpha^2 (alpha+1)^2") {
        FieldCtx F = field_for_q(11);
        for (long i = 2; i < 30; ++i) {
            Fe alpha = F.element(i);
            if (F.is_zero(alpha) || alpha == F.one()) continue;
            MatrixM M = matrix_M(F, 11, 6, alpha);
            Fe want = F.mul(F.from_int(30),
                            F.mul(F.sub(F.one(), alpha),
                                  F.mul(F.pow(alpha, 2), F.pow(F.add(alpha, F.one()), 2))));
            CHECK(M.detN_direct == want);
            CHECK(M.detN_closed == want);
        }
    }
    SUBCASE("alpha = -1, even m: detN vanishes but rank is not claimed") {
        FieldCtx F = field_for_q(11);
        MatrixM M = matrix_M(F, 11, 6, F.neg(F.one()));
        CHECK(F.is_zero(M.detN_direct));
        CHECK(F.is_zero(M.detN_closed));
    }
}

TEST_CASE("distinguishing elements") {
    SUBCASE("q=9, m=5 generic") {
        FieldCtx F = field_for_q(9);
        PlaceTable T(F, 9, 5);
        REQUIRE_FALSE(T.affine_off_o().empty());
        auto d = distinguishing_element(F, 9, 5,
                                        T.all()[static_cast<size_t>(T.affine_off_o().front())]);
        CHECK(d.element > 9 + 1 - 5);
        CHECK(d.element < 9 + 1 - 2);
        CHECK(d.not_in_S);
        CHECK(d.distinct_from_T);
    }
    SUBCASE("O' places") {
        FieldCtx F = field_for_q(9);
        PlaceTable T(F, 9, 5);
        REQUIRE_FALSE(T.o_prime().empty());
        auto d = distinguishing_element(F, 9, 5, T.all()[static_cast<size_t>(T.o_prime().front())]);
        CHECK(d.element == 9 - 3);  // {q-3, q-1, q, q+1} route, m = 5
        CHECK(d.not_in_S);

        FieldCtx F11 = field_for_q(11);
        PlaceTable T11(F11, 11, 6);
        auto d6 = distinguishing_element(F11, 11, 6,
                                         T11.all()[static_cast<size_t>(T11.o_prime().front())]);
        CHECK(d6.element == 11 + 1 - (6 - 2));  // q+1-(m-2) via Y powers
        CHECK(d6.not_in_S);
        CHECK(d6.distinct_from_T);
    }
}

TEST_CASE("fixture round trip and solver agreement") {
    auto recs = derive_fixtures(19);
    CHECK_FALSE(recs.empty());
    std::stringstream ss;
    write_fixtures(ss, recs);
    auto back = read_fixtures(ss);
    REQUIRE(back.size() == recs.size());
    for (size_t i = 0; i < recs.size(); ++i) {
        CHECK(back[i].kind == recs[i].kind);
        CHECK(back[i].alpha_digits == recs[i].alpha_digits);
        CHECK(back[i].coeffs == recs[i].coeffs);
    }

    // the committed fixture file must match a fresh derivation
    std::ifstream is(std::string(MAXCURVE_SOURCE_DIR) + "/data/fixtures/derived_coeffs.tsv");
    REQUIRE(is.good());
    auto stored = read_fixtures(is);
    CHECK_FALSE(stored.empty());
    std::map<long, std::vector<FixtureRecord>> by_q;
    for (auto& r : stored) by_q[r.q].push_back(r);
    for (long q : {19L, 23L}) {
        auto fresh = derive_fixtures(q);
        REQUIRE(by_q.count(q));
        REQUIRE(fresh.size() == by_q[q].size());
        for (size_t i = 0; i < fresh.size(); ++i) {
            CHECK(fresh[i].kind == by_q[q][i].kind);
            CHECK(fresh[i].alpha_digits == by_q[q][i].alpha_digits);
            CHECK(fresh[i].coeffs == by_q[q][i].coeffs);
        }
    }
}
