#include "maxcurve/gf.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

namespace maxcurve {

namespace {

std::atomic<uint8_t> next_ctx_id{1};

// Remainder of a by monic b over F_p, coefficient lists low-degree-first.
std::vector<long> poly_mod(std::vector<long> a, const std::vector<int>& b, long p) {
    const int db = static_cast<int>(b.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        long c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j)
            a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p * p) % p;
    }
    a.resize(db);
    return a;
}

bool poly_is_irreducible(const std::vector<int>& f, long p) {
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg <= 0) return false;
    // trial division by every monic polynomial of degree up to deg/2
    for (int d = 1; d <= deg / 2; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long num = 0; num < count; ++num) {
            std::vector<int> g(d + 1, 0);
            long x = num;
            for (int i = 0; i < d; ++i) { g[i] = static_cast<int>(x % p); x /= p; }
            g[d] = 1;
            std::vector<long> a(f.begin(), f.end());
            auto r = poly_mod(std::move(a), g, p);
            if (std::all_of(r.begin(), r.end(), [](long c) { return c == 0; })) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree `deg` over F_p,
// coefficients (c0, ..., c_{deg-1}) compared low-degree-first.
std::vector<int> smallest_irreducible(long p, int deg) {
    std::vector<int> c(deg, 0);
    for (;;) {
        std::vector<int> f(c);
        f.push_back(1);
        if (poly_is_irreducible(f, p)) return f;
        // increment (c_{deg-1} fastest keeps (c0,...) lex ascending with c0 slowest,
        // so bump from the high end)
        int i = deg - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) throw Error("Internal", "no irreducible found");
        ++c[i];
    }
}

std::vector<long> factor_distinct_primes(long n) {
    std::vector<long> out;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

constexpr long kTableLimit = 1L << 20;

}  // namespace

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_prime_power(long q, long* p_out, int* k_out) {
    if (q < 2) return false;
    for (long p = 2; p * p <= q; ++p) {
        if (q % p) continue;
        long m = q;
        int k = 0;
        while (m % p == 0) { m /= p; ++k; }
        if (m != 1) return false;
        if (p_out) *p_out = p;
        if (k_out) *k_out = k;
        return true;
    }
    if (p_out) *p_out = q;
    if (k_out) *k_out = 1;
    return true;
}

FieldCtx FieldCtx::make(long p, int k) {
    if (!is_prime(p)) throw Error("NonPrime", "p = " + std::to_string(p));
    if (k < 1) throw Error("TooLarge", "extension degree must be positive");
    long q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        if (q > (1L << 16)) throw Error("TooLarge", "p^k exceeds 2^16");
    }
    FieldCtx F;
    F.p_ = p;
    F.k_ = k;
    F.q_ = q;
    F.q2_ = q * q;
    F.d_ = 2 * k;
    F.mod_q_ = smallest_irreducible(p, k);
    F.mod_q2_ = smallest_irreducible(p, 2 * k);
    F.init_tables();
    return F;
}

FieldCtx FieldCtx::make_with_modulus(long p, int k, std::vector<int> mod_q2) {
    if (!is_prime(p)) throw Error("NonPrime", "p = " + std::to_string(p));
    if (static_cast<int>(mod_q2.size()) != 2 * k + 1 || mod_q2.back() != 1)
        throw Error("BadParams", "modulus must be monic of degree 2k");
    if (!poly_is_irreducible(mod_q2, p))
        throw Error("BadParams", "modulus is reducible");
    long q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        if (q > (1L << 16)) throw Error("TooLarge", "p^k exceeds 2^16");
    }
    FieldCtx F;
    F.p_ = p;
    F.k_ = k;
    F.q_ = q;
    F.q2_ = q * q;
    F.d_ = 2 * k;
    F.mod_q_ = smallest_irreducible(p, k);
    F.mod_q2_ = std::move(mod_q2);
    F.init_tables();
    return F;
}

void FieldCtx::init_tables() {
    id_ = next_ctx_id.fetch_add(1);
    if (id_ == 0) throw Error("TooLarge", "field context id space exhausted");
    pow_p_.resize(d_);
    pow_p_[0] = 1;
    for (int i = 1; i < d_; ++i) pow_p_[i] = pow_p_[i - 1] * static_cast<uint32_t>(p_);
    one_ = 1;
    gen_ = Fe{0, id_};

    // Find the encoding-smallest primitive element by order factorization.
    auto primes = factor_distinct_primes(q2_ - 1);
    for (long i = 1; i < q2_; ++i) {
        Fe e{static_cast<uint32_t>(i), id_};
        bool primitive = true;
        for (long r : primes)
            if (pow(e, (q2_ - 1) / r) == one()) { primitive = false; break; }
        if (primitive) { gen_ = e; break; }
    }
    if (gen_.v == 0) throw Error("Internal", "no primitive element");

    if (q2_ <= kTableLimit) {
        log_.assign(q2_, -1);
        exp_.assign(q2_ - 1, 0);
        Fe cur = one();
        for (long i = 0; i < q2_ - 1; ++i) {
            exp_[i] = cur.v;
            log_[cur.v] = static_cast<int32_t>(i);
            cur = mul_poly(cur, gen_);
        }
        have_tables_ = true;
    }
}

Fe FieldCtx::from_int(long n) const {
    long r = n % p_;
    if (r < 0) r += p_;
    return Fe{static_cast<uint32_t>(r), id_};
}

Fe FieldCtx::from_digits(const std::vector<int>& digits) const {
    uint32_t v = 0;
    for (int i = d_ - 1; i >= 0; --i) {
        long c = i < static_cast<int>(digits.size()) ? digits[i] % p_ : 0;
        if (c < 0) c += p_;
        v = v * static_cast<uint32_t>(p_) + static_cast<uint32_t>(c);
    }
    return Fe{v, id_};
}

std::vector<int> FieldCtx::digits(Fe e) const {
    check(e);
    std::vector<int> out(d_);
    uint32_t v = e.v;
    for (int i = 0; i < d_; ++i) { out[i] = static_cast<int>(v % p_); v /= p_; }
    return out;
}

Fe FieldCtx::add(Fe a, Fe b) const {
    check(a); check(b);
    uint32_t r = 0, va = a.v, vb = b.v;
    for (int i = 0; i < d_; ++i) {
        uint32_t s = va % p_ + vb % p_;
        if (s >= static_cast<uint32_t>(p_)) s -= static_cast<uint32_t>(p_);
        r += s * pow_p_[i];
        va /= p_; vb /= p_;
    }
    return Fe{r, id_};
}

Fe FieldCtx::neg(Fe a) const {
    check(a);
    uint32_t r = 0, va = a.v;
    for (int i = 0; i < d_; ++i) {
        uint32_t c = va % p_;
        if (c) c = static_cast<uint32_t>(p_) - c;
        r += c * pow_p_[i];
        va /= p_;
    }
    return Fe{r, id_};
}

Fe FieldCtx::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe FieldCtx::mul_poly(Fe a, Fe b) const {
    std::vector<long> prod(2 * d_ - 1, 0);
    std::vector<int> da = digits(a), db = digits(b);
    for (int i = 0; i < d_; ++i) {
        if (!da[i]) continue;
        for (int j = 0; j < d_; ++j)
            if (db[j]) prod[i + j] = (prod[i + j] + static_cast<long>(da[i]) * db[j]) % p_;
    }
    auto red = poly_mod(std::move(prod), mod_q2_, p_);
    uint32_t v = 0;
    for (int i = d_ - 1; i >= 0; --i) v = v * static_cast<uint32_t>(p_) + static_cast<uint32_t>(red[i]);
    return Fe{v, id_};
}

Fe FieldCtx::mul(Fe a, Fe b) const {
    check(a); check(b);
    if (a.v == 0 || b.v == 0) return zero();
    if (have_tables_) {
        long s = log_[a.v] + log_[b.v];
        if (s >= q2_ - 1) s -= q2_ - 1;
        return Fe{exp_[s], id_};
    }
    return mul_poly(a, b);
}

Fe FieldCtx::inv(Fe a) const {
    check(a);
    if (a.v == 0) throw Error("DivideByZero", "inverse of zero");
    if (have_tables_) {
        long l = log_[a.v];
        return Fe{exp_[l == 0 ? 0 : q2_ - 1 - l], id_};
    }
    return pow(a, q2_ - 2);
}

Fe FieldCtx::pow(Fe a, long e) const {
    check(a);
    if (a.v == 0) {
        if (e <= 0) throw Error("DivideByZero", "0 to a nonpositive power");
        return zero();
    }
    if (have_tables_) {
        long l = log_[a.v];
        long m = q2_ - 1;
        long s = ((l % m) * (e % m)) % m;
        if (s < 0) s += m;
        return Fe{exp_[s], id_};
    }
    if (e < 0) return pow(inv(a), -e);
    Fe r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

long FieldCtx::order(Fe a) const {
    check(a);
    if (a.v == 0) throw Error("DivideByZero", "order of zero");
    long n = q2_ - 1;
    long o = n;
    for (long r : factor_distinct_primes(n))
        while (o % r == 0 && pow(a, o / r) == one()) o /= r;
    return o;
}

Fe FieldCtx::root_of_unity(long ord) const {
    if (ord <= 0 || (q2_ - 1) % ord != 0)
        throw Error("OrderNotDividing", std::to_string(ord) + " does not divide q^2-1");
    return pow(gen_, (q2_ - 1) / ord);
}

std::vector<Fe> FieldCtx::nth_roots(Fe c, long n) const {
    check(c);
    if (n <= 0) throw Error("BadParams", "n must be positive");
    if (c.v == 0) return {zero()};
    const long m = q2_ - 1;
    const long d = std::gcd(n, m);
    if (pow(c, m / d) != one()) return {};
    // one solution via discrete log, the rest via mu_d
    long lc;
    if (have_tables_) {
        lc = log_[c.v];
    } else {
        lc = -1;
        Fe cur = one();
        for (long i = 0; i < m; ++i) {
            if (cur == c) { lc = i; break; }
            cur = mul(cur, gen_);
        }
        if (lc < 0) throw Error("Internal", "log not found");
    }
    // solve n*t = lc (mod m); lc divisible by d here
    long n1 = (n / d) % (m / d), m1 = m / d;
    // modular inverse of n1 mod m1 by extended Euclid
    long a0 = n1 % m1, b0 = m1, x0 = 1, x1 = 0;
    while (b0) {
        long t = a0 / b0;
        a0 -= t * b0; std::swap(a0, b0);
        x0 -= t * x1; std::swap(x0, x1);
    }
    long ninv = ((x0 % m1) + m1) % m1;
    long t0 = ((lc / d) % m1) * ninv % m1;
    std::vector<Fe> out;
    out.reserve(d);
    for (long j = 0; j < d; ++j) out.push_back(pow(gen_, (t0 + j * m1) % m));
    std::sort(out.begin(), out.end());
    return out;
}

FieldCtx field_for_q(long q) {
    long p;
    int k;
    if (!is_prime_power(q, &p, &k)) throw Error("BadParams", std::to_string(q) + " is not a prime power");
    return FieldCtx::make(p, k);
}

}  // namespace maxcurve
