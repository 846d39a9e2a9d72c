#include "maxcurve/autgrp.hpp"

#include <algorithm>
#include <unordered_set>

namespace maxcurve {

namespace {

struct PermHash {
    size_t operator()(const std::vector<int32_t>& v) const {
        size_t h = v.size();
        for (int32_t x : v) h = h * 0x9e3779b97f4a7c15ULL + static_cast<size_t>(x) + 1;
        return h;
    }
};

std::vector<int32_t> identity_perm(long n) {
    std::vector<int32_t> p(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) p[static_cast<size_t>(i)] = static_cast<int32_t>(i);
    return p;
}

void validate_is_permutation(const PlaceTable& T, const std::vector<int32_t>& p,
                             const std::string& who) {
    std::vector<char> seen(p.size(), 0);
    for (int32_t x : p) {
        if (x < 0 || static_cast<size_t>(x) >= p.size() || seen[static_cast<size_t>(x)])
            throw Error("UndefinedBoundaryAction", who + " is not a bijection of the place list");
        seen[static_cast<size_t>(x)] = 1;
    }
    (void)T;
}

}  // namespace

AutoMap diag_map(const PlaceTable& T, Fe gamma, Fe delta) {
    const FieldCtx& F = T.field();
    const long q = T.q(), m = T.m(), n = T.n();
    if (F.pow(gamma, n) != F.one() || F.pow(delta, q + 1) != F.one())
        throw Error("BadParams", "need gamma^{(q+1)/m} = delta^{q+1} = 1");

    // lift (u,v) -> (c u, (delta/c) v) with c^m = gamma; the mu_m ambiguity in
    // c is absorbed by the coset representation
    auto roots = F.nth_roots(gamma, m);
    if (roots.empty()) throw Error("UndefinedBoundaryAction", "gamma has no m-th root");
    Fe c = roots.front();
    Fe dc1 = F.mul(delta, F.inv(c));
    Fe dc2 = F.mul(delta, F.inv(F.mul(c, c)));
    Fe dmh = m % 2 == 0 ? F.mul(gamma, F.pow(delta, -(m / 2))) : F.zero();

    AutoMap out;
    out.word = "diag";
    out.perm.resize(static_cast<size_t>(T.size()));
    for (long i = 0; i < T.size(); ++i) {
        const PlaceRef& P = T.all()[static_cast<size_t>(i)];
        PlaceRef img;
        switch (P.kind) {
            case PlaceRef::Kind::Affine:
                img = PlaceRef{PlaceRef::Kind::Affine, F.mul(gamma, P.a), F.mul(delta, P.b)};
                break;
            case PlaceRef::Kind::AtZero:
                img = PlaceRef{PlaceRef::Kind::AtZero, T.coset_rep(F.mul(dc1, P.a)), F.zero()};
                break;
            case PlaceRef::Kind::AtInfinity:
                img = m % 2 == 0
                          ? PlaceRef{PlaceRef::Kind::AtInfinity, F.mul(dmh, P.a), F.zero()}
                          : PlaceRef{PlaceRef::Kind::AtInfinity, T.coset_rep(F.mul(dc2, P.a)),
                                     F.zero()};
                break;
        }
        out.perm[static_cast<size_t>(i)] = T.index_of(img);
    }
    validate_is_permutation(T, out.perm, "diag");
    return out;
}

AutoMap theta2_map(const PlaceTable& T) {
    const FieldCtx& F = T.field();
    const long m = T.m();
    AutoMap out;
    out.word = "theta2";
    out.perm.resize(static_cast<size_t>(T.size()));
    for (long i = 0; i < T.size(); ++i) {
        const PlaceRef& P = T.all()[static_cast<size_t>(i)];
        PlaceRef img;
        switch (P.kind) {
            case PlaceRef::Kind::Affine:
                if (F.is_zero(P.b)) {
                    auto roots = F.nth_roots(P.a, m);
                    if (roots.empty())
                        throw Error("UndefinedBoundaryAction", "x-coordinate has no m-th root");
                    img = PlaceRef{PlaceRef::Kind::AtZero, T.coset_rep(roots.front()), F.zero()};
                } else {
                    img = PlaceRef{PlaceRef::Kind::Affine,
                                   F.mul(F.pow(P.b, m), F.inv(P.a)), P.b};
                }
                break;
            case PlaceRef::Kind::AtZero:
                img = PlaceRef{PlaceRef::Kind::Affine, F.pow(P.a, m), F.zero()};
                break;
            case PlaceRef::Kind::AtInfinity:
                img = PlaceRef{PlaceRef::Kind::AtInfinity,
                               m % 2 == 0 ? F.inv(P.a) : T.coset_rep(F.inv(P.a)), F.zero()};
                break;
        }
        out.perm[static_cast<size_t>(i)] = T.index_of(img);
    }
    validate_is_permutation(T, out.perm, "theta2");
    return out;
}

Theta4Params find_theta4_params(const FieldCtx& F, long q) {
    if (q % 4 != 3 || q < 7) throw Error("BadParams", "need q = 3 (mod 4), q >= 7");
    Fe inv16 = F.inv(F.from_int(16));
    Fe inv4 = F.inv(F.from_int(4));
    auto d2s = F.nth_roots(F.neg(inv16), 4);
    if (d2s.empty()) throw Error("NoSolution", "no delta_2 with delta_2^4 = -1/16");
    // delta_3^{(q+1)/2} = 1/4 refines delta_3^{q+1} = 1/16
    std::vector<Fe> d3s;
    for (long i = 1; i < F.q2(); ++i) {
        Fe e = F.element(i);
        if (F.pow(e, (q + 1) / 2) == inv4) d3s.push_back(e);
    }
    if (d3s.empty()) throw Error("NoSolution", "no delta_3 with delta_3^{(q+1)/2} = 1/4");
    Theta4Params par;
    par.d2 = d2s.front();
    par.d3 = *std::min_element(d3s.begin(), d3s.end());
    par.d1 = F.neg(F.inv(F.mul(F.from_int(4), par.d2)));
    if (F.pow(par.d3, q + 1) != inv16) throw Error("NoSolution", "delta_3 norm check failed");
    return par;
}

AutoMap theta4_map(const PlaceTable& T, const Theta4Params& par) {
    const FieldCtx& F = T.field();
    const long q = T.q(), m = T.m();
    if (m % 2 != 0 || m != (q + 1) / 2)
        throw Error("BadParams", "theta_4 lives on the curve with m = (q+1)/2 even");
    const long qp4 = (q + 1) / 4;
    Fe d3q4 = F.pow(par.d3, qp4);

    AutoMap out;
    out.word = "theta4";
    out.perm.resize(static_cast<size_t>(T.size()));
    for (long i = 0; i < T.size(); ++i) {
        const PlaceRef& P = T.all()[static_cast<size_t>(i)];
        PlaceRef img;
        switch (P.kind) {
            case PlaceRef::Kind::Affine:
                if (F.is_zero(P.b)) {
                    // local data x = a + O(y^{q+1}): leading term d1 a / y^{(q+1)/4}
                    img = PlaceRef{PlaceRef::Kind::AtInfinity,
                                   F.mul(F.mul(par.d1, P.a), F.inv(d3q4)), F.zero()};
                } else {
                    Fe bq = F.pow(P.b, qp4);
                    Fe x2 = F.add(F.mul(F.mul(par.d1, P.a), F.inv(bq)),
                                  F.mul(F.mul(par.d2, bq), F.inv(P.a)));
                    img = PlaceRef{PlaceRef::Kind::Affine, x2, F.mul(par.d3, F.inv(P.b))};
                }
                break;
            case PlaceRef::Kind::AtZero:
                // y = eta u (1+...), x = u^m: the second theta_4 term leads
                img = PlaceRef{PlaceRef::Kind::AtInfinity,
                               F.mul(F.mul(par.d2, F.pow(P.a, (q + 1) / 2)), F.inv(d3q4)),
                               F.zero()};
                break;
            case PlaceRef::Kind::AtInfinity: {
                // x = alpha pi^{-m/2} + beta pi^{(q+1-m)/2} + ..., pi = 1/y;
                // the image x-value is a' = d1 alpha + d2/alpha, zero exactly
                // when alpha^2 = 4 d2^2, in which case the image drops to O_0
                // with y'^m/x' -> -2 d3^m / (d2 alpha).
                Fe al = P.a;
                Fe a2 = F.add(F.mul(par.d1, al), F.mul(par.d2, F.inv(al)));
                if (!F.is_zero(a2)) {
                    img = PlaceRef{PlaceRef::Kind::Affine, a2, F.zero()};
                } else {
                    Fe c = F.neg(F.mul(F.add(F.pow(par.d3, m), F.pow(par.d3, m)),
                                       F.inv(F.mul(par.d2, al))));
                    auto roots = F.nth_roots(c, m);
                    if (roots.empty())
                        throw Error("UndefinedBoundaryAction", "image orbit not identifiable");
                    img = PlaceRef{PlaceRef::Kind::AtZero, T.coset_rep(roots.front()), F.zero()};
                }
                break;
            }
        }
        out.perm[static_cast<size_t>(i)] = T.index_of(img);
    }
    validate_is_permutation(T, out.perm, "theta4");
    return out;
}

PlaceRef apply(const PlaceTable& T, const AutoMap& map, const PlaceRef& place) {
    return T.all()[static_cast<size_t>(map.perm[static_cast<size_t>(T.index_of(place))])];
}

AutoMap compose(const PlaceTable& T, const AutoMap& first, const AutoMap& then) {
    AutoMap out;
    out.word = then.word + "*" + first.word;
    out.perm.resize(first.perm.size());
    for (size_t i = 0; i < first.perm.size(); ++i)
        out.perm[i] = then.perm[static_cast<size_t>(first.perm[i])];
    (void)T;
    return out;
}

Closure group_closure(const PlaceTable& T, const std::vector<AutoMap>& gens, long cap) {
    std::unordered_set<std::vector<int32_t>, PermHash> seen;
    std::vector<std::vector<int32_t>> frontier;
    auto ident = identity_perm(T.size());
    seen.insert(ident);
    frontier.push_back(ident);
    while (!frontier.empty()) {
        std::vector<std::vector<int32_t>> next;
        for (auto& g : frontier) {
            for (auto& h : gens) {
                std::vector<int32_t> x(g.size());
                for (size_t i = 0; i < g.size(); ++i)
                    x[i] = h.perm[static_cast<size_t>(g[i])];
                if (seen.insert(x).second) {
                    if (static_cast<long>(seen.size()) > cap)
                        throw Error("ClosureTooLarge", "closure exceeds cap");
                    next.push_back(std::move(x));
                }
            }
        }
        frontier = std::move(next);
    }

    Closure out;
    out.order = static_cast<long>(seen.size());
    // orbit partition via union-find over the generator action
    std::vector<int> parent(static_cast<size_t>(T.size()));
    for (long i = 0; i < T.size(); ++i) parent[static_cast<size_t>(i)] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (auto& g : gens)
        for (long i = 0; i < T.size(); ++i) {
            int a = find(static_cast<int>(i)), b = find(g.perm[static_cast<size_t>(i)]);
            if (a != b) parent[static_cast<size_t>(a)] = b;
        }
    std::map<int, std::vector<int>> buckets;
    for (long i = 0; i < T.size(); ++i)
        buckets[find(static_cast<int>(i))].push_back(static_cast<int>(i));
    for (auto& [r, v] : buckets) out.orbits.push_back(v);
    return out;
}

OrbitReport orbit_report(const PlaceTable& T, bool with_theta4) {
    const FieldCtx& F = T.field();
    const long q = T.q(), n = T.n();

    Fe gamma0 = F.root_of_unity(n);
    Fe delta0 = F.root_of_unity(q + 1);
    AutoMap dg = diag_map(T, gamma0, F.one());
    AutoMap dd = diag_map(T, F.one(), delta0);
    AutoMap t2 = theta2_map(T);

    auto is_orbit = [&](const Closure& cl, const std::vector<int>& want) {
        std::vector<int> sorted = want;
        std::sort(sorted.begin(), sorted.end());
        for (auto& orb : cl.orbits) {
            if (orb.size() != sorted.size()) continue;
            if (std::equal(orb.begin(), orb.end(), sorted.begin())) return true;
        }
        return false;
    };

    OrbitReport rep;
    Closure clA = group_closure(T, {dg, dd});
    rep.order_A = clA.order;
    rep.o0_transitive = is_orbit(clA, T.at_zero());
    rep.oinf_transitive = is_orbit(clA, T.at_infinity());
    rep.om_transitive = is_orbit(clA, T.o_m());
    rep.oprime_size = static_cast<long>(T.o_prime().size());
    rep.oprime_single_orbit = T.o_prime().empty() || is_orbit(clA, T.o_prime());

    Closure clG = group_closure(T, {dg, dd, t2});
    rep.order_G = clG.order;
    std::vector<int> o0om = T.at_zero();
    o0om.insert(o0om.end(), T.o_m().begin(), T.o_m().end());
    rep.o0_om_merged = is_orbit(clG, o0om);

    if (!T.o_m().empty()) {
        // stabilizer order of a P_(a,0) by orbit-stabilizer inside <A, theta_2>
        rep.stabilizer_pa0 = rep.order_G / static_cast<long>(o0om.size());
    }

    if (with_theta4) {
        auto par = find_theta4_params(F, q);
        AutoMap t4 = theta4_map(T, par);
        Closure cl4 = group_closure(T, {dg, dd, t4});
        rep.order_G4 = cl4.order;
        std::vector<int> O = o0om;
        O.insert(O.end(), T.at_infinity().begin(), T.at_infinity().end());
        rep.o_single_orbit_theta4 = is_orbit(cl4, O);
    }
    return rep;
}

}  // namespace maxcurve
