#include "maxcurve/lseries.hpp"

#include <algorithm>

namespace maxcurve {

Series::Series(const FieldCtx* F, int val, std::vector<Fe> coeffs, int trunc)
    : F_(F), val_(val), trunc_(trunc), coeffs_(std::move(coeffs)) {
    normalize();
}

void Series::normalize() {
    if (val_ + static_cast<int>(coeffs_.size()) > trunc_)
        coeffs_.resize(std::max(0, trunc_ - val_));
    size_t lead = 0;
    while (lead < coeffs_.size() && F_->is_zero(coeffs_[lead])) ++lead;
    if (lead) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        val_ += static_cast<int>(lead);
    }
    while (!coeffs_.empty() && F_->is_zero(coeffs_.back())) coeffs_.pop_back();
    if (coeffs_.empty()) val_ = trunc_;
}

int Series::valuation() const {
    if (coeffs_.empty())
        throw Error("PrecisionExhausted", "series is zero up to trunc " + std::to_string(trunc_));
    return val_;
}

Fe Series::coeff(int e) const {
    if (e >= trunc_)
        throw Error("PrecisionExhausted",
                    "coefficient at " + std::to_string(e) + " beyond trunc " + std::to_string(trunc_));
    if (e < val_ || e >= val_ + static_cast<int>(coeffs_.size())) return F_->zero();
    return coeffs_[e - val_];
}

Series Series::operator-() const {
    std::vector<Fe> c(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = F_->neg(coeffs_[i]);
    return Series(F_, val_, std::move(c), trunc_);
}

Series Series::scaled(Fe c) const {
    if (F_->is_zero(c)) return Series(F_, trunc_, {}, trunc_);
    std::vector<Fe> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = F_->mul(c, coeffs_[i]);
    return Series(F_, val_, std::move(out), trunc_);
}

Series Series::shifted(int k) const { return Series(F_, val_ + k, coeffs_, trunc_ + k); }

Series Series::truncated(int new_trunc) const {
    return Series(F_, std::min(val_, new_trunc), coeffs_, std::min(trunc_, new_trunc));
}

Series operator+(const Series& a, const Series& b) {
    const FieldCtx* F = a.F_;
    int t = std::min(a.trunc_, b.trunc_);
    int v = std::min(std::min(a.val_, b.val_), t);
    std::vector<Fe> out(static_cast<size_t>(std::max(0, t - v)), F->zero());
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        int e = a.val_ + static_cast<int>(i);
        if (e < t) out[e - v] = F->add(out[e - v], a.coeffs_[i]);
    }
    for (size_t i = 0; i < b.coeffs_.size(); ++i) {
        int e = b.val_ + static_cast<int>(i);
        if (e < t) out[e - v] = F->add(out[e - v], b.coeffs_[i]);
    }
    return Series(F, v, std::move(out), t);
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    const FieldCtx* F = a.F_;
    // A term beyond trunc_a in a contributes from exponent trunc_a + val_b on.
    int t = std::min(a.trunc_ + b.val_, b.trunc_ + a.val_);
    if (a.coeffs_.empty() || b.coeffs_.empty()) return Series(F, t, {}, t);
    int v = a.val_ + b.val_;
    std::vector<Fe> out(static_cast<size_t>(std::max(0, t - v)), F->zero());
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (F->is_zero(a.coeffs_[i])) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            size_t e = i + j;
            if (e >= out.size()) break;
            out[e] = F->add(out[e], F->mul(a.coeffs_[i], b.coeffs_[j]));
        }
    }
    return Series(F, v, std::move(out), t);
}

Series Series::pow(long e) const {
    if (e == 0) return constant(*F_, F_->one(), trunc_);
    if (e < 0) return inverse().pow(-e);
    Series acc = *this;
    Series result = constant(*F_, F_->one(), trunc_);
    bool first = true;
    while (e) {
        if (e & 1) {
            result = first ? acc : result * acc;
            first = false;
        }
        e >>= 1;
        if (e) acc = acc * acc;
    }
    return result;
}

Series Series::inverse() const {
    if (coeffs_.empty()) throw Error("ZeroLeading", "inverting a series that is zero up to trunc");
    const int n = trunc_ - val_;
    std::vector<Fe> inv(static_cast<size_t>(n), F_->zero());
    Fe i0 = F_->inv(coeffs_[0]);
    inv[0] = i0;
    for (int m = 1; m < n; ++m) {
        Fe s = F_->zero();
        for (int j = 1; j <= m; ++j) {
            Fe uj = j < static_cast<int>(coeffs_.size()) ? coeffs_[j] : F_->zero();
            if (!F_->is_zero(uj)) s = F_->add(s, F_->mul(uj, inv[m - j]));
        }
        inv[m] = F_->neg(F_->mul(i0, s));
    }
    return Series(F_, -val_, std::move(inv), -val_ + n);
}

Series hensel_solve(const FieldCtx& F, const std::vector<Series>& condition, Fe init, int trunc) {
    // Root and simple-root check at t = 0.
    Fe val = F.zero(), der = F.zero(), powi = F.one();
    for (size_t j = 0; j < condition.size(); ++j) {
        Fe c0 = condition[j].is_zero_to_trunc() ? F.zero() : condition[j].coeff(0);
        val = F.add(val, F.mul(c0, powi));
        if (j + 1 < condition.size()) powi = F.mul(powi, init);
    }
    powi = F.one();
    for (size_t j = 1; j < condition.size(); ++j) {
        Fe c0 = condition[j].is_zero_to_trunc() ? F.zero() : condition[j].coeff(0);
        der = F.add(der, F.mul(F.from_int(static_cast<long>(j)), F.mul(c0, powi)));
        powi = F.mul(powi, init);
    }
    if (!F.is_zero(val)) throw Error("SingularLift", "initial value is not a root");
    if (F.is_zero(der)) throw Error("SingularLift", "derivative vanishes at the initial value");

    // Newton iteration; quadratic convergence doubles the certified precision.
    Series s = Series::constant(F, init, trunc);
    auto poly_val = [&](const Series& cur) {
        Series acc = Series::zero(F, trunc);
        Series sp = Series::constant(F, F.one(), trunc);
        for (size_t j = 0; j < condition.size(); ++j) {
            acc = acc + (condition[j].truncated(trunc) * sp).truncated(trunc);
            if (j + 1 < condition.size()) sp = (sp * cur).truncated(trunc);
        }
        return acc;
    };
    auto poly_der = [&](const Series& cur) {
        Series acc = Series::zero(F, trunc);
        Series sp = Series::constant(F, F.one(), trunc);
        for (size_t j = 1; j < condition.size(); ++j) {
            acc = acc + (condition[j].truncated(trunc) * sp).scaled(F.from_int(static_cast<long>(j)))
                            .truncated(trunc);
            if (j + 1 < condition.size()) sp = (sp * cur).truncated(trunc);
        }
        return acc;
    };

    for (int prec = 1; prec < trunc;) {
        prec = std::min(2 * prec, trunc);
        Series fv = poly_val(s);
        if (fv.is_zero_to_trunc()) break;
        Series fd = poly_der(s);
        s = (s - fv * fd.inverse()).truncated(trunc);
    }
    // Substitute back; the residual must vanish identically up to trunc.
    Series residual = poly_val(s);
    if (!residual.is_zero_to_trunc())
        throw Error("SingularLift", "lift failed to satisfy the condition");
    return s;
}

InfinityExpansion expand_x_at_infinity(const FieldCtx& F, long q, long m, Fe branch_root,
                                       int trunc) {
    if (m % 2 != 0 || (q + 1) % m != 0 || m <= 2 || m >= q + 1)
        throw Error("BadParams", "need even m | q+1 with 2 < m < q+1");
    const long n2 = 2 * (q + 1) / m;
    if (F.pow(branch_root, n2) != F.neg(F.one()))
        throw Error("NotABranchRoot", "alpha^(2(q+1)/m) != -1");
    if (trunc < 0) trunc = static_cast<int>(q + 2);

    // x = pi^{-m/2} s(pi) turns the curve equation into
    //   s^{2n} + pi^{(q+1)/2} s^n + 1 = 0,  n = (q+1)/m,
    // and each branch is the Hensel lift of a root of s^{2n} = -1.
    const long n = (q + 1) / m;
    std::vector<Series> cond(static_cast<size_t>(2 * n + 1), Series::zero(F, trunc));
    cond[0] = Series::constant(F, F.one(), trunc);
    if ((q + 1) / 2 < trunc)
        cond[static_cast<size_t>(n)] = Series::monomial(F, F.one(), static_cast<int>((q + 1) / 2), trunc);
    cond[static_cast<size_t>(2 * n)] = Series::constant(F, F.one(), trunc);
    Series s = hensel_solve(F, cond, branch_root, trunc);

    InfinityExpansion out{branch_root, F.zero(), s.shifted(static_cast<int>(-m / 2))};
    const int beta_exp = static_cast<int>((q + 1 - m) / 2);
    if (beta_exp < out.x.trunc()) out.beta = out.x.coeff(beta_exp);
    return out;
}

AffineExpansion expand_xy_at_place(const FieldCtx& F, long q, long m, Fe a, Fe b, int trunc) {
    if (trunc > q) throw Error("TruncationBeyondQ", "expansions are only valid to O(T^q)");
    if ((q + 1) % m != 0) throw Error("BadParams", "need m | q+1");
    if (F.is_zero(a) || F.is_zero(b)) throw Error("BadParams", "need a place with ab != 0");
    const long n = (q + 1) / m;
    Fe z = F.pow(a, n);
    Fe w = F.sub(F.neg(F.one()), z);
    if (F.is_zero(w)) throw Error("BadParams", "place lies over a ramified x-fiber");
    if (F.pow(b, q + 1) != F.mul(z, F.neg(F.add(F.one(), z))))
        throw Error("BadParams", "(a, b) is not on the curve");

    // 0 = w (V^{q+1} + V^q + V) + z (T^{q+1} + T^q + T), V(0) = 0, where
    // V = (v-B)/B and T = (u-A)/A on the Hermitian cover; only z = A^{q+1}
    // and w = B^{q+1} enter, so the expansion is rational in F_{q^2}.
    std::vector<Series> cond(static_cast<size_t>(q + 2), Series::zero(F, trunc));
    {
        Series c0 = Series::monomial(F, z, 1, trunc);
        if (q < trunc) c0 = c0 + Series::monomial(F, z, static_cast<int>(q), trunc);
        cond[0] = c0;  // T^{q+1} is beyond every admissible trunc
    }
    cond[1] = Series::constant(F, w, trunc);
    if (static_cast<long>(cond.size()) > q) cond[static_cast<size_t>(q)] = Series::constant(F, w, trunc);
    cond[static_cast<size_t>(q + 1)] = Series::constant(F, w, trunc);
    Series V = hensel_solve(F, cond, F.zero(), trunc);

    Series T1 = Series::monomial(F, F.one(), 1, trunc) + Series::constant(F, F.one(), trunc);
    AffineExpansion out{
        T1.pow(m) - Series::constant(F, F.one(), trunc),
        T1 * V + Series::monomial(F, F.one(), 1, trunc),
        F.mul(z, F.inv(F.add(F.one(), z))),
    };
    return out;
}

AffineExpansion expand_xy_at_affine_place(const FieldCtx& F, long q, long m, Fe A, Fe B,
                                          int trunc) {
    if (F.is_zero(A) || F.is_zero(B)) throw Error("BadParams", "need AB != 0");
    Fe lhs = F.add(F.add(F.pow(A, q + 1), F.pow(B, q + 1)), F.one());
    if (!F.is_zero(lhs)) throw Error("NotOnHermitian", "(A, B) not on u^{q+1}+v^{q+1}+1 = 0");
    return expand_xy_at_place(F, q, m, F.pow(A, m), F.mul(A, B), trunc);
}

}  // namespace maxcurve
