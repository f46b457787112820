#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rcf/errors.hpp"

namespace rcf {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

u64 pow_mod(u64 base, u64 exp, u64 m);
u64 inv_mod(u64 a, u64 m);

// Deterministic Miller-Rabin, valid for the full u64 range.
bool is_prime(u64 n);

// Jacobi symbol (a/n) for odd n > 0.  Equals the Legendre symbol when n is
// prime; callers that cannot vouch for primality should use legendre_symbol.
int jacobi(i64 a, u64 n);

// Primes up to `limit` together with a smallest-prime-factor table indexed by
// value, so factoring anything <= limit is a table walk.
struct PrimeTable {
    u64 limit = 0;
    std::vector<u32> spf;
    std::vector<u64> primes;
};

PrimeTable sieve_primes(u64 limit, u64 memory_budget_bytes = u64(1) << 30);

struct PrimeFactorization {
    u64 value = 1;
    std::vector<std::pair<u64, int>> factors; // (prime, exponent), ascending
};

PrimeFactorization factorize(u64 n, const PrimeTable* table = nullptr);

int legendre_symbol(i64 a, u64 p);

// Square root of a modulo an odd prime p, canonicalized to [1, (p-1)/2].
// Tonelli-Shanks; the needed non-residue is found by scanning 2, 3, 5, ...
u64 sqrt_mod(u64 a, u64 p);

// An element of exact multiplicative order l mod p, where l is a prime
// divisor of p-1.  Deterministic for a fixed (seed, p, l).
u64 element_of_order(u64 l, u64 p, u64 seed = 0);

// Baby-step/giant-step table for discrete logs in the order-l subgroup
// generated by zeta.  Built once per (zeta, l, p), then O(sqrt l) per query.
class DlogTable {
public:
    DlogTable(u64 zeta, u64 l, u64 p);
    // dlog base zeta of target; throws input_error if target is outside the
    // subgroup (detected by exhausting the giant steps).
    u64 operator()(u64 target) const;

    u64 zeta() const { return zeta_; }
    u64 order() const { return l_; }

private:
    u64 zeta_, l_, p_, m_, giant_;
    u64 mask_;
    std::vector<std::pair<u64, u32>> slots_; // open addressing, key+1 stored
};

u64 dlog_prime_order(u64 zeta, u64 target, u64 l, u64 p);

} // namespace rcf
