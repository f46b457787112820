#pragma once

#include <gmpxx.h>

#include <vector>

#include "rcf/arith.hpp"

namespace rcf {

// Real quadratic field Q(sqrt d) for squarefree d > 1.
struct RealQuadraticField {
    i64 d = 0;
    i64 discriminant = 0; // d if d = 1 mod 4, else 4d

    explicit RealQuadraticField(i64 d);
};

bool is_squarefree(i64 n);
i64 squarefree_part(i64 n);

// Continued fraction of omega = (1+sqrt d)/2 when d = 1 mod 4, else of
// sqrt d.  Steps walk (P,Q) states with alpha = (P + sqrt d)/Q; the expansion
// is eventually periodic and the state pairs stay bounded by 2*sqrt(d)+1.
struct CFStep {
    i64 P, Q, a;
};

struct CFExpansion {
    i64 d = 0;
    std::vector<CFStep> steps;  // preperiod followed by one full period
    std::size_t tail_start = 0; // index where the periodic tail begins
    std::size_t period = 0;
};

CFExpansion continued_fraction(const RealQuadraticField& K);

// Fundamental unit (a + b sqrt d)/q with q in {1,2}, b > 0, value > 1.
struct FundamentalUnit {
    i64 d = 0;
    mpz_class a, b;
    int q = 1;
    int norm = 0; // +1 or -1
};

FundamentalUnit fundamental_unit(const RealQuadraticField& K);

bool has_norm_minus_one(const RealQuadraticField& K);

// Class number via reduced binary quadratic forms of discriminant
// disc(K): cycle count gives the narrow class number, halved when the
// fundamental unit has norm +1.
long class_number(const RealQuadraticField& K, i64 disc_bound = 1'000'000);
long narrow_class_number(i64 disc, i64 disc_bound = 1'000'000);

// Residue of the fundamental unit mod a split odd prime p, where root is a
// fixed square root of d mod p: (a + b*root) / q mod p.
u64 unit_mod_prime(const FundamentalUnit& u, u64 p, u64 root);

// Same residue computed by running the continued fraction recurrences mod p,
// never materializing the bignum unit.
u64 unit_mod_prime(const CFExpansion& cf, u64 p, u64 root);

} // namespace rcf
