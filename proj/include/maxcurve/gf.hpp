#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maxcurve {

// All library failures carry a short machine-readable kind ("NonPrime",
// "DivideByZero", ...) next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Element of F_{q^2} = F_p[x]/(modulus), encoded as the base-p digits of its
// coefficient vector (digit i = coefficient of x^i). The encoding order is
// the deterministic element order used everywhere (roots, generators, reps).
struct Fe {
    uint32_t v = 0;
    uint8_t ctx = 0;

    friend bool operator==(Fe a, Fe b) { return a.v == b.v && a.ctx == b.ctx; }
    friend bool operator!=(Fe a, Fe b) { return !(a == b); }
    friend bool operator<(Fe a, Fe b) { return a.v < b.v; }
};

// F_{q^2}, q = p^k, built as a single degree-2k extension of F_p so that the
// q-Frobenius is a plain power and the F_q-subfield test is e^q == e.
//
// Construction is deterministic: modulus polynomials are the lexicographically
// smallest monic irreducibles over F_p (coefficient vectors compared
// low-degree-first), and the generator is the encoding-smallest element of
// multiplicative order q^2-1. Two calls with the same (p, k) produce
// identical contexts.
class FieldCtx {
public:
    static FieldCtx make(long p, int k);
    // Same construction with a caller-supplied modulus for F_{q^2}; used to
    // check that point counts are model-independent.
    static FieldCtx make_with_modulus(long p, int k, std::vector<int> mod_q2);

    long p() const { return p_; }
    int k() const { return k_; }
    long q() const { return q_; }
    long q2() const { return q2_; }
    int degree() const { return d_; }
    uint8_t id() const { return id_; }
    const std::vector<int>& modulus_q() const { return mod_q_; }
    const std::vector<int>& modulus_q2() const { return mod_q2_; }
    Fe generator() const { return gen_; }

    Fe zero() const { return Fe{0, id_}; }
    Fe one() const { return Fe{one_, id_}; }
    Fe from_int(long n) const;
    Fe from_digits(const std::vector<int>& digits) const;
    std::vector<int> digits(Fe e) const;

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const;
    Fe inv(Fe a) const;          // DivideByZero on 0
    Fe pow(Fe a, long e) const;  // negative e inverts (DivideByZero on 0)

    bool is_zero(Fe a) const { check(a); return a.v == 0; }
    // e lies in the subfield F_q iff e^q = e.
    bool in_subfield_q(Fe a) const { return pow(a, q_) == a; }
    Fe frobenius_q(Fe a) const { return pow(a, q_); }

    long order(Fe a) const;  // multiplicative order; DivideByZero on 0
    // generator^((q^2-1)/order); exact multiplicative order `order`.
    Fe root_of_unity(long order) const;  // OrderNotDividing
    // All x with x^n = c, sorted in encoding order. {0} for c = 0; size is
    // gcd(n, q^2-1) or 0 otherwise.
    std::vector<Fe> nth_roots(Fe c, long n) const;

    // Iteration helper: element with encoding i (0 <= i < q^2).
    Fe element(long i) const { return Fe{static_cast<uint32_t>(i), id_}; }

private:
    FieldCtx() = default;
    void init_tables();
    void check(Fe a) const {
        if (a.ctx != id_) throw Error("CtxMismatch", "element from another field context");
    }
    Fe mul_poly(Fe a, Fe b) const;  // table-free path

    long p_ = 0, q_ = 0, q2_ = 0;
    int k_ = 0, d_ = 0;
    uint8_t id_ = 0;
    uint32_t one_ = 1;
    std::vector<int> mod_q_, mod_q2_;
    Fe gen_;
    std::vector<uint32_t> pow_p_;           // p^i, i = 0..d
    bool have_tables_ = false;
    std::vector<int32_t> log_;              // index -> discrete log (0 slot unused)
    std::vector<uint32_t> exp_;             // discrete log -> index
};

bool is_prime(long n);
// q = p^k? fills p and k on success.
bool is_prime_power(long q, long* p_out, int* k_out);
// Deterministic context for a given prime power q (TooLarge beyond 2^16).
FieldCtx field_for_q(long q);

}  // namespace maxcurve
