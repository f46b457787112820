#pragma once

#include <gmpxx.h>

#include <vector>

#include "rcf/arith.hpp"
#include "rcf/multiquad.hpp"

namespace rcf {

// Everything about a completely split odd prime p that the rank criterion
// needs: square roots of the radicals, residues of the basis and of the unit
// generators under every real embedding, and the factorization of p-1.
// Embeddings are listed in Gray-code order of their sign masks, so adjacent
// columns differ by a single sign flip.
struct SplitPrimeContext {
    u64 p = 0;
    int p_mod_4 = 0;
    int n = 0;
    std::vector<i64> field_radicals;
    std::vector<u64> radical_roots;           // sqrt(d_i) mod p, canonical representative
    std::vector<std::vector<u64>> basis_res;  // [embedding][basis mask]
    std::vector<std::vector<u64>> gen_res;    // [generator][embedding]
    std::vector<int> gen_norms;
    PrimeFactorization pm1;
    std::vector<u64> odd_ls;                  // distinct odd primes dividing p-1, ascending
};

SplitPrimeContext build_context(const MultiquadField& K, const UnitSystem& units, u64 p,
                                const PrimeTable* table = nullptr);

// Matrix of discrete logs of sigma_j(u_i)^((p-1)/l) to a fixed zeta of
// order l.  Rows are generators, columns embeddings; every row sums to 0
// mod l because (p-1)/l is even and the unit norms are +-1.
struct PhiMatrix {
    u64 l = 0;
    u64 zeta = 0;
    std::vector<std::vector<u64>> rows;
};

PhiMatrix phi_l_matrix(const SplitPrimeContext& ctx, u64 l, u64 seed = 0);

int rank_mod(const std::vector<std::vector<u64>>& rows, u64 l);

struct OddPartReport {
    u64 l = 0;
    int rank = 0;
    int required = 0;
    bool pass = false;
};

// Full criterion verdict for one split prime: true iff p = 3 mod 4 and every
// odd-l rank is maximal.  For p = 1 mod 4 no matrices are evaluated.
struct CriterionReport {
    u64 p = 0;
    int p_mod_4 = 0;
    std::vector<OddPartReport> odd_parts;
    bool verdict = false;
};

CriterionReport ray_class_equals(const MultiquadField& K, const UnitSystem& units, u64 p,
                                 u64 seed = 0, const PrimeTable* table = nullptr);

// Order of the subgroup of (F_p^x)^n generated by the unit residue vectors
// and (-1, ..., -1), by explicit closure.  Memory-bounded by requiring
// (p-1)^n <= budget.
mpz_class brute_force_psi_order(const MultiquadField& K, const UnitSystem& units, u64 p,
                                u64 budget = 100'000'000);

// Same order through discrete logs and a lattice index; no size budget, so
// this is the path for primes the closure cannot reach.
mpz_class psi_image_order(const MultiquadField& K, const UnitSystem& units, u64 p);

} // namespace rcf
