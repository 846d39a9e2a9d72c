#include "maxcurve/places.hpp"

#include <algorithm>

namespace maxcurve {

namespace {

uint64_t key_of(const PlaceRef& p) {
    return (static_cast<uint64_t>(p.kind) << 62) ^ (static_cast<uint64_t>(p.a.v) << 30) ^
           (static_cast<uint64_t>(p.b.v) * 0x9e3779b97f4a7c15ULL >> 12);
}

}  // namespace

PlaceTable::PlaceTable(const FieldCtx& F, long q, long m) : F_(&F), q_(q), m_(m) {
    if (F.q() != q) throw Error("BadParams", "field context does not match q");
    if (m <= 2 || m >= q + 1 || (q + 1) % m != 0)
        throw Error("BadParams", "need m | q+1 and 2 < m < q+1");
    n_ = (q + 1) / m;

    mu_m_ = F.nth_roots(F.one(), m);
    auto etas = F.nth_roots(F.neg(F.one()), q + 1);

    auto push = [&](PlaceRef p, std::vector<int>* bucket) {
        int idx = static_cast<int>(places_.size());
        places_.push_back(p);
        index_.emplace(key_of(p), idx);
        if (bucket) bucket->push_back(idx);
    };

    // O_0: mu_m-orbits of the Hermitian points (0, eta).
    std::vector<Fe> zero_reps;
    for (Fe e : etas) {
        Fe r = coset_rep(e);
        if (r == e) zero_reps.push_back(r);
    }
    std::sort(zero_reps.begin(), zero_reps.end());
    for (Fe r : zero_reps) push(PlaceRef{PlaceRef::Kind::AtZero, r, F.zero()}, &o_zero_);

    // O_infinity: branch roots alpha for even m, w-cosets for odd m.
    if (m % 2 == 0) {
        for (Fe al : F.nth_roots(F.neg(F.one()), 2 * n_))
            push(PlaceRef{PlaceRef::Kind::AtInfinity, al, F.zero()}, &o_inf_);
    } else {
        for (Fe r : zero_reps) push(PlaceRef{PlaceRef::Kind::AtInfinity, r, F.zero()}, &o_inf_);
    }

    // Affine places, a != 0: b^{q+1} = -(a^{2n} + a^n), rational iff the
    // right side lies in F_q (the image of the norm).
    for (long i = 1; i < F.q2(); ++i) {
        Fe a = F.element(i);
        Fe z = F.pow(a, n_);
        Fe c = F.neg(F.add(F.mul(z, z), z));
        if (F.is_zero(c)) {
            push(PlaceRef{PlaceRef::Kind::Affine, a, F.zero()}, &o_m_);
            continue;
        }
        if (F.pow(c, q - 1) != F.one()) continue;
        bool oprime = F.is_zero(F.add(F.add(z, z), F.one()));
        for (Fe b : F.nth_roots(c, q + 1)) {
            push(PlaceRef{PlaceRef::Kind::Affine, a, b}, oprime ? &o_prime_ : &affine_off_o_);
        }
    }
}

Fe PlaceTable::coset_rep(Fe w) const {
    Fe best = w;
    for (Fe z : mu_m_) {
        Fe c = F_->mul(w, z);
        if (c < best) best = c;
    }
    return best;
}

int PlaceTable::index_of(const PlaceRef& p) const {
    auto it = index_.find(key_of(p));
    if (it == index_.end() || !(places_[it->second] == p)) {
        // hash collision or absent place: fall back to a linear scan
        for (size_t i = 0; i < places_.size(); ++i)
            if (places_[i] == p) return static_cast<int>(i);
        throw Error("BadParams", "place not in table");
    }
    return it->second;
}

long valuation_x(const PlaceTable& T, const PlaceRef& P) {
    switch (P.kind) {
        case PlaceRef::Kind::AtZero: return T.m();
        case PlaceRef::Kind::AtInfinity: return T.m() % 2 ? -T.m() : -T.m() / 2;
        case PlaceRef::Kind::Affine: return 0;
    }
    return 0;
}

long valuation_y(const PlaceTable& T, const PlaceRef& P) {
    switch (P.kind) {
        case PlaceRef::Kind::AtZero: return 1;
        case PlaceRef::Kind::AtInfinity: return T.m() % 2 ? -2 : -1;
        case PlaceRef::Kind::Affine: return T.field().is_zero(P.b) ? 1 : 0;
    }
    return 0;
}

long valuation_x_minus(const PlaceTable& T, const PlaceRef& P, Fe a) {
    const FieldCtx& F = T.field();
    if (F.is_zero(a)) return valuation_x(T, P);
    switch (P.kind) {
        case PlaceRef::Kind::AtZero: return 0;
        case PlaceRef::Kind::AtInfinity: return valuation_x(T, P);
        case PlaceRef::Kind::Affine:
            if (P.a != a) return 0;
            // unramified over x = a unless a^n = -1, where x - a = c y^{q+1}(1+...)
            return F.is_zero(P.b) ? T.q() + 1 : 1;
    }
    return 0;
}

long valuation_y_minus(const PlaceTable& T, const PlaceRef& P, Fe b) {
    const FieldCtx& F = T.field();
    if (F.is_zero(b)) return valuation_y(T, P);
    switch (P.kind) {
        case PlaceRef::Kind::AtZero: return 0;
        case PlaceRef::Kind::AtInfinity: return valuation_y(T, P);
        case PlaceRef::Kind::Affine: {
            if (P.b != b) return 0;
            // multiplicity of a as a root of W = x^{2n} + x^n + b^{q+1},
            // counted by repeated synthetic division
            const long n = T.n();
            std::vector<Fe> W(static_cast<size_t>(2 * n + 1), F.zero());
            W[0] = F.pow(b, T.q() + 1);
            W[static_cast<size_t>(n)] = F.one();
            W[static_cast<size_t>(2 * n)] = F.one();
            long mult = 0;
            for (;;) {
                // synthetic division by (x - a); remainder is W(a)
                std::vector<Fe> Q(W.size() - 1, F.zero());
                Fe acc = F.zero();
                for (int i = static_cast<int>(W.size()) - 1; i >= 1; --i) {
                    acc = F.add(F.mul(acc, P.a), W[static_cast<size_t>(i)]);
                    Q[static_cast<size_t>(i - 1)] = acc;
                }
                Fe rem = F.add(F.mul(acc, P.a), W[0]);
                if (!F.is_zero(rem)) break;
                ++mult;
                W = std::move(Q);
                if (W.size() <= 1) break;
            }
            return mult;
        }
    }
    return 0;
}

long valuation_of_monomial_function(const PlaceTable& T, const MonomialExpr& e,
                                    const PlaceRef& at) {
    switch (e.form) {
        case MonomialExpr::Form::YiOverXMinusA:
            if (e.i < 0) throw Error("UndefinedAtPlace", "negative exponent");
            return e.i * valuation_y(T, at) - valuation_x_minus(T, at, e.a);
        case MonomialExpr::Form::YmOverXXMinusA:
            return T.m() * valuation_y(T, at) - valuation_x(T, at) -
                   valuation_x_minus(T, at, e.a);
        case MonomialExpr::Form::XiYj:
            if (e.i < 0 || e.j < 0) throw Error("UndefinedAtPlace", "negative exponent");
            return e.i * valuation_x(T, at) + e.j * valuation_y(T, at);
    }
    throw Error("UndefinedAtPlace", "unknown expression form");
}

void Divisor::add(int place_index, long c) {
    if (c == 0) return;
    long& slot = c_[place_index];
    slot += c;
    if (slot == 0) c_.erase(place_index);
}

long Divisor::coeff(int place_index) const {
    auto it = c_.find(place_index);
    return it == c_.end() ? 0 : it->second;
}

long Divisor::degree() const {
    long d = 0;
    for (auto& [i, c] : c_) d += c;
    return d;
}

PrincipalDivisor principal_divisor(const PlaceTable& T, PrincipalKind kind,
                                   const PlaceRef& anchor) {
    const FieldCtx& F = T.field();
    const long q = T.q(), m = T.m(), n = T.n();
    const bool even = m % 2 == 0;
    PrincipalDivisor out;

    Divisor claimed;
    auto add_Dinf = [&](long c) {
        for (int i : T.at_infinity()) claimed.add(i, c);
    };
    switch (kind) {
        case PrincipalKind::X:
            for (int i : T.at_zero()) claimed.add(i, m);
            add_Dinf(even ? -m / 2 : -m);
            break;
        case PrincipalKind::XMinusA: {
            if (anchor.kind != PlaceRef::Kind::Affine)
                throw Error("BadParams", "anchor must be affine");
            Fe z = F.pow(anchor.a, n);
            if (F.is_zero(F.add(z, F.one()))) {
                claimed.add(T.index_of(PlaceRef{PlaceRef::Kind::Affine, anchor.a, F.zero()}), q + 1);
            } else {
                for (Fe xi : F.nth_roots(F.one(), q + 1))
                    claimed.add(T.index_of(PlaceRef{PlaceRef::Kind::Affine, anchor.a,
                                                    F.mul(xi, anchor.b)}),
                                1);
            }
            add_Dinf(even ? -m / 2 : -m);
            break;
        }
        case PrincipalKind::Y:
            for (int i : T.at_zero()) claimed.add(i, 1);
            for (int i : T.o_m()) claimed.add(i, 1);
            add_Dinf(even ? -1 : -2);
            break;
        case PrincipalKind::YMinusB: {
            if (anchor.kind != PlaceRef::Kind::Affine || F.is_zero(anchor.b))
                throw Error("BadParams", "anchor must be affine with b != 0");
            // E_b: multiplicity 2 exactly where 2a^{(q+1)/m} + 1 = 0
            long rational_deg = 0;
            for (long i = 1; i < F.q2(); ++i) {
                Fe a = F.element(i);
                Fe z = F.pow(a, n);
                Fe w = F.add(F.add(F.mul(z, z), z), F.pow(anchor.b, q + 1));
                if (!F.is_zero(w)) continue;
                long mult = F.is_zero(F.add(F.add(z, z), F.one())) ? 2 : 1;
                claimed.add(T.index_of(PlaceRef{PlaceRef::Kind::Affine, a, anchor.b}), mult);
                rational_deg += mult;
            }
            out.irrational_degree = 2 * n - rational_deg;
            add_Dinf(even ? -1 : -2);
            break;
        }
    }

    // Independent recomputation from local data at every place.
    Divisor computed;
    for (long i = 0; i < T.size(); ++i) {
        const PlaceRef& P = T.all()[static_cast<size_t>(i)];
        long v = 0;
        switch (kind) {
            case PrincipalKind::X: v = valuation_x(T, P); break;
            case PrincipalKind::XMinusA: v = valuation_x_minus(T, P, anchor.a); break;
            case PrincipalKind::Y: v = valuation_y(T, P); break;
            case PrincipalKind::YMinusB: v = valuation_y_minus(T, P, anchor.b); break;
        }
        computed.add(static_cast<int>(i), v);
    }

    for (auto& [i, c] : computed.entries())
        if (claimed.coeff(i) != c)
            throw Error("DivisorMismatch", "claimed " + std::to_string(claimed.coeff(i)) +
                                               " != computed " + std::to_string(c) +
                                               " at place index " + std::to_string(i));
    for (auto& [i, c] : claimed.entries())
        if (computed.coeff(i) != c)
            throw Error("DivisorMismatch", "claimed coefficient unsupported at place index " +
                                               std::to_string(i));
    if (claimed.degree() + out.irrational_degree != 0)
        throw Error("DivisorMismatch", "nonzero degree " +
                                           std::to_string(claimed.degree() + out.irrational_degree));
    out.div = claimed;
    return out;
}

}  // namespace maxcurve
