#include "rcf/quadratic.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace rcf {

namespace {

i64 isqrt_i64(i64 n) {
    i64 r = (i64)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

bool is_squarefree(i64 n) {
    if (n == 0) return false;
    n = std::llabs(n);
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) return false;
        while (n % d == 0) n /= d;
    }
    return true;
}

i64 squarefree_part(i64 n) {
    if (n == 0) throw input_error("squarefree_part: argument must be nonzero");
    i64 sign = n < 0 ? -1 : 1;
    n = std::llabs(n);
    i64 out = 1;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            if (e & 1) out *= d;
        }
    }
    return sign * out * n;
}

RealQuadraticField::RealQuadraticField(i64 d_in) : d(d_in) {
    if (d < 2) throw input_error("RealQuadraticField: d must be an integer > 1");
    if (!is_squarefree(d))
        throw input_error("RealQuadraticField: " + std::to_string(d) + " is not squarefree");
    discriminant = (d % 4 == 1) ? d : 4 * d;
}

CFExpansion continued_fraction(const RealQuadraticField& K) {
    i64 d = K.d;
    i64 r = isqrt_i64(d);
    i64 bound = 2 * r + 1;
    i64 P = (d % 4 == 1) ? 1 : 0;
    i64 Q = (d % 4 == 1) ? 2 : 1;
    CFExpansion cf;
    cf.d = d;
    std::map<std::pair<i64, i64>, std::size_t> seen;
    for (;;) {
        auto it = seen.find({P, Q});
        if (it != seen.end()) {
            cf.tail_start = it->second;
            cf.period = cf.steps.size() - it->second;
            return cf;
        }
        seen[{P, Q}] = cf.steps.size();
        i64 a = (P + r) / Q;
        cf.steps.push_back({P, Q, a});
        P = a * Q - P;
        check_invariant((d - P * P) % Q == 0, "continued_fraction: state update not integral");
        Q = (d - P * P) / Q;
        check_invariant(Q > 0, "continued_fraction: Q must stay positive");
        check_invariant(std::llabs(P) <= bound && Q <= bound,
                        "continued_fraction: state exceeds the 2*sqrt(d)+1 bound");
    }
}

FundamentalUnit fundamental_unit(const RealQuadraticField& K) {
    CFExpansion cf = continued_fraction(K);
    mpz_class qm2 = 1, qm1 = 0;
    for (std::size_t k = cf.tail_start; k < cf.steps.size(); ++k) {
        mpz_class next = cf.steps[k].a * qm1 + qm2;
        qm2 = qm1;
        qm1 = next;
        if (mpz_sizeinbase(qm1.get_mpz_t(), 2) > 4'000'000)
            throw resource_error("fundamental_unit: convergent growth exceeds budget");
    }
    i64 Ps = cf.steps[cf.tail_start].P;
    i64 Qs = cf.steps[cf.tail_start].Q;
    FundamentalUnit u;
    u.d = K.d;
    u.a = qm1 * Ps + qm2 * Qs;
    u.b = qm1;
    mpz_class den = Qs;
    mpz_class g = gcd(gcd(u.a, u.b), den);
    u.a /= g;
    u.b /= g;
    den /= g;
    check_invariant(den == 1 || den == 2, "fundamental_unit: denominator must be 1 or 2");
    u.q = (int)den.get_si();
    if (u.q == 2)
        check_invariant(K.d % 4 == 1 && (u.a - u.b) % 2 == 0,
                        "fundamental_unit: half-integer unit outside its order");
    mpz_class nrm = u.a * u.a - K.d * u.b * u.b;
    check_invariant(nrm == u.q * u.q || nrm == -u.q * u.q, "fundamental_unit: norm is not a unit");
    u.norm = nrm > 0 ? 1 : -1;
    check_invariant(u.norm == ((cf.period % 2 == 0) ? 1 : -1),
                    "fundamental_unit: norm disagrees with period parity");
    check_invariant(u.a > 0 && u.b > 0, "fundamental_unit: value must exceed 1");
    return u;
}

bool has_norm_minus_one(const RealQuadraticField& K) {
    if (K.d % 4 == 3) return false;
    i64 n = K.d;
    for (i64 q = 3; q * q <= n; q += 2) {
        if (n % q == 0) {
            if (q % 4 == 3) return false;
            while (n % q == 0) n /= q;
        }
    }
    if (n > 2 && n % 4 == 3) return false;
    return continued_fraction(K).period % 2 == 1;
}

namespace {

std::vector<i64> divisors_of(i64 m) {
    std::vector<i64> out;
    for (i64 u = 1; u * u <= m; ++u) {
        if (m % u == 0) {
            out.push_back(u);
            if (u != m / u) out.push_back(m / u);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)); }

} // namespace

long narrow_class_number(i64 D, i64 disc_bound) {
    if (D <= 0 || D % 4 == 2 || D % 4 == 3)
        throw input_error("narrow_class_number: not a discriminant: " + std::to_string(D));
    if (D > disc_bound)
        throw resource_error("narrow_class_number: discriminant " + std::to_string(D) +
                             " exceeds bound " + std::to_string(disc_bound));
    i64 rD = isqrt_i64(D);
    if (rD * rD == D) throw input_error("narrow_class_number: discriminant must not be a square");

    using Form = std::array<i64, 3>;
    std::set<Form> forms;
    for (i64 b = 2 - (D % 2); b <= rD; b += 2) {
        i64 M = (D - b * b) / 4;
        for (i64 u : divisors_of(M)) {
            if (D < (2 * u + b) * (2 * u + b) && (2 * u - b < 0 || (2 * u - b) * (2 * u - b) < D)) {
                i64 c = M / u;
                if (gcd3(u, b, c) == 1) {
                    forms.insert({u, b, -c});
                    forms.insert({-u, b, c});
                }
            }
        }
    }

    auto rho = [D, rD](const Form& f) -> Form {
        i64 c = f[2];
        i64 m = 2 * std::llabs(c);
        i64 lo = rD + 1 - m;
        i64 b2 = lo + (((-f[1] - lo) % m + m) % m);
        return {c, b2, (b2 * b2 - D) / (4 * c)};
    };

    std::set<Form> visited;
    long cycles = 0;
    for (const Form& f : forms) {
        if (visited.count(f)) continue;
        ++cycles;
        Form g = f;
        while (!visited.count(g)) {
            visited.insert(g);
            g = rho(g);
        }
    }
    return cycles;
}

long class_number(const RealQuadraticField& K, i64 disc_bound) {
    long narrow = narrow_class_number(K.discriminant, disc_bound);
    if (has_norm_minus_one(K)) return narrow;
    check_invariant(narrow % 2 == 0, "class_number: narrow class number must be even without a norm -1 unit");
    return narrow / 2;
}

u64 unit_mod_prime(const FundamentalUnit& u, u64 p, u64 root) {
    if (p < 3 || (p & 1) == 0) throw input_error("unit_mod_prime: p must be an odd prime");
    if (mul_mod(root, root, p) != (u64)(((u.d % (i64)p) + (i64)p) % (i64)p))
        throw input_error("unit_mod_prime: root is not a square root of d mod p");
    u64 am = mpz_fdiv_ui(u.a.get_mpz_t(), p);
    u64 bm = mpz_fdiv_ui(u.b.get_mpz_t(), p);
    u64 res = (am + mul_mod(bm, root, p)) % p;
    res = mul_mod(res, inv_mod((u64)u.q, p), p);
    check_invariant(res != 0, "unit_mod_prime: unit residue vanished");
    return res;
}

u64 unit_mod_prime(const CFExpansion& cf, u64 p, u64 root) {
    if (p < 3 || (p & 1) == 0) throw input_error("unit_mod_prime: p must be an odd prime");
    i64 Ps = cf.steps[cf.tail_start].P;
    i64 Qs = cf.steps[cf.tail_start].Q;
    // Convergent denominators mod 8*p*Qs; the extra factor keeps exact
    // divisibility by Qs and the parity of the result visible.
    u64 M = 8 * p * (u64)Qs;
    u64 qm2 = 1 % M, qm1 = 0;
    for (std::size_t k = cf.tail_start; k < cf.steps.size(); ++k) {
        u64 a = (u64)(cf.steps[k].a) % M;
        u64 next = (mul_mod(a, qm1, M) + qm2) % M;
        qm2 = qm1;
        qm1 = next;
    }
    u64 nA = (mul_mod(qm1, (u64)(((Ps % (i64)M) + (i64)M) % (i64)M), M) + mul_mod(qm2, (u64)Qs, M)) % M;
    u64 nB = qm1;
    // eps = (nA + nB sqrt d)/Qs as exact integers over den in {1,2}
    auto try_den = [&](u64 den) -> std::pair<bool, u64> {
        u128 zA = (u128)nA * den, zB = (u128)nB * den;
        if (zA % (u64)Qs != 0 || zB % (u64)Qs != 0) return {false, 0};
        u64 A = (u64)(zA / (u64)Qs), B = (u64)(zB / (u64)Qs);
        if (den == 2 && ((A & 1) == 0 || (B & 1) == 0)) return {false, 0};
        u64 res = (A % p + mul_mod(B % p, root, p)) % p;
        return {true, mul_mod(res, inv_mod(den, p), p)};
    };
    if (cf.d % 4 == 1) {
        auto [ok2, r2] = try_den(2);
        if (ok2) {
            check_invariant(r2 != 0, "unit_mod_prime: unit residue vanished");
            return r2;
        }
    }
    auto [ok1, r1] = try_den(1);
    check_invariant(ok1, "unit_mod_prime: convergent residues fail exact division");
    check_invariant(r1 != 0, "unit_mod_prime: unit residue vanished");
    return r1;
}

} // namespace rcf
