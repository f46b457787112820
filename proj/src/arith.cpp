#include "rcf/arith.hpp"

#include <cmath>
#include <string>

namespace rcf {

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 inv_mod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = (i64)m, nr = (i64)(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        t -= q * nt; std::swap(t, nt);
        r -= q * nr; std::swap(r, nr);
    }
    if (r != 1) throw input_error("inv_mod: argument not invertible mod " + std::to_string(m));
    if (t < 0) t += (i64)m;
    return (u64)t;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

int jacobi(i64 a, u64 n) {
    if (n == 0 || (n & 1) == 0) throw input_error("jacobi: modulus must be odd and positive");
    u64 ua = (u64)((a % (i64)n + (i64)n) % (i64)n);
    int result = 1;
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            u64 r = n & 7;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(ua, n);
        if ((ua & 3) == 3 && (n & 3) == 3) result = -result;
        ua %= n;
    }
    return n == 1 ? result : 0;
}

PrimeTable sieve_primes(u64 limit, u64 memory_budget_bytes) {
    if (limit < 2) throw input_error("sieve_primes: limit must be at least 2");
    if (limit >= (u64(1) << 32))
        throw resource_error("sieve_primes: limit exceeds 32-bit table range");
    u64 need = (limit + 1) * sizeof(u32);
    if (need > memory_budget_bytes)
        throw resource_error("sieve_primes: table would need " + std::to_string(need) +
                             " bytes, budget is " + std::to_string(memory_budget_bytes));
    PrimeTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (t.spf[i] == 0) {
            t.spf[i] = (u32)i;
            t.primes.push_back(i);
            if (i * i <= limit) {
                for (u64 j = i * i; j <= limit; j += i) {
                    if (t.spf[j] == 0) t.spf[j] = (u32)i;
                }
            }
        }
    }
    return t;
}

PrimeFactorization factorize(u64 n, const PrimeTable* table) {
    if (n == 0) throw input_error("factorize: argument must be positive");
    PrimeFactorization f;
    f.value = n;
    if (table && n <= table->limit) {
        while (n > 1) {
            u64 p = table->spf[n];
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.factors.emplace_back(p, e);
        }
        return f;
    }
    u64 steps = 0;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (++steps > 100'000'000ull)
            throw resource_error("factorize: trial division budget exceeded");
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            f.factors.emplace_back(d, e);
        }
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

int legendre_symbol(i64 a, u64 p) {
    if (p == 2 || !is_prime(p))
        throw input_error("legendre_symbol: modulus " + std::to_string(p) + " is not an odd prime");
    return jacobi(a, p);
}

u64 sqrt_mod(u64 a, u64 p) {
    if (p < 3 || (p & 1) == 0) throw input_error("sqrt_mod: modulus must be an odd prime");
    a %= p;
    if (a == 0) throw input_error("sqrt_mod: argument must be nonzero mod p");
    if (jacobi((i64)a, p) != 1)
        throw input_error("sqrt_mod: " + std::to_string(a) + " is not a square mod " + std::to_string(p));
    u64 r;
    if ((p & 3) == 3) {
        r = pow_mod(a, (p + 1) / 4, p);
    } else {
        u64 q = p - 1;
        int s = 0;
        while ((q & 1) == 0) { q >>= 1; ++s; }
        u64 z = 2;
        while (jacobi((i64)z, p) != -1) ++z;
        u64 c = pow_mod(z, q, p);
        r = pow_mod(a, (q + 1) / 2, p);
        u64 t = pow_mod(a, q, p);
        int m = s;
        while (t != 1) {
            u64 t2 = t;
            int i = 0;
            while (t2 != 1) { t2 = mul_mod(t2, t2, p); ++i; }
            u64 b = pow_mod(c, u64(1) << (m - i - 1), p);
            r = mul_mod(r, b, p);
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            m = i;
        }
    }
    check_invariant(mul_mod(r, r, p) == a % p, "sqrt_mod: result fails to square back");
    return r <= p / 2 ? r : p - r;
}

namespace {

u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

u64 element_of_order(u64 l, u64 p, u64 seed) {
    if (p < 3 || l < 2) throw input_error("element_of_order: need p >= 3 and l >= 2");
    if ((p - 1) % l != 0)
        throw input_error("element_of_order: " + std::to_string(l) + " does not divide p-1");
    u64 state = seed * 0x100000001b3ull ^ p * 0x9ddfea08eb382d69ull ^ l;
    u64 cofactor = (p - 1) / l;
    for (;;) {
        u64 a = 2 + splitmix64(state) % (p - 3);
        u64 t = pow_mod(a, cofactor, p);
        if (t != 1) {
            check_invariant(pow_mod(t, l, p) == 1, "element_of_order: candidate order is wrong");
            return t;
        }
    }
}

DlogTable::DlogTable(u64 zeta, u64 l, u64 p) : zeta_(zeta), l_(l), p_(p) {
    if (!is_prime(l)) throw input_error("DlogTable: subgroup order must be prime");
    if (zeta % p == 0 || pow_mod(zeta, l, p) != 1 || zeta % p == 1)
        throw input_error("DlogTable: generator does not have order " + std::to_string(l));
    m_ = (u64)std::ceil(std::sqrt((double)l));
    if (m_ >= l) m_ = l - 1;
    if (m_ == 0) m_ = 1;
    u64 cap = 16;
    while (cap < 2 * (m_ + 1)) cap <<= 1;
    mask_ = cap - 1;
    slots_.assign(cap, {0, 0});
    u64 cur = 1;
    for (u64 j = 0; j < m_; ++j) {
        u64 h = (cur * 0x9ddfea08eb382d69ull) & mask_;
        while (slots_[h].first != 0 && slots_[h].first != cur + 1) h = (h + 1) & mask_;
        if (slots_[h].first == 0) slots_[h] = {cur + 1, (u32)j};
        cur = mul_mod(cur, zeta_, p_);
    }
    giant_ = pow_mod(zeta_, l_ - (m_ % l_), p_); // zeta^(-m)
}

u64 DlogTable::operator()(u64 target) const {
    target %= p_;
    if (target == 0) throw input_error("dlog: target must be nonzero mod p");
    u64 cur = target;
    for (u64 g = 0; g * m_ <= l_; ++g) {
        u64 h = (cur * 0x9ddfea08eb382d69ull) & mask_;
        while (slots_[h].first != 0) {
            if (slots_[h].first == cur + 1) {
                u64 res = (g * m_ + slots_[h].second) % l_;
                check_invariant(pow_mod(zeta_, res, p_) == target, "dlog: result fails to verify");
                return res;
            }
            h = (h + 1) & mask_;
        }
        cur = mul_mod(cur, giant_, p_);
    }
    throw input_error("dlog: target is not in the order-" + std::to_string(l_) + " subgroup");
}

u64 dlog_prime_order(u64 zeta, u64 target, u64 l, u64 p) {
    return DlogTable(zeta, l, p)(target);
}

} // namespace rcf
