#pragma once

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rcf/criterion.hpp"
#include "rcf/real.hpp"

namespace rcf {

// Local factor of the density product at an odd prime l.  The cyclotomic
// degree [K(zeta_l):K] is l-1 unless sqrt(l) lies in K, which needs l to be
// one of the quadratic subfield radicals and 1 mod 4; then it halves.
struct LocalFactor {
    u64 l = 0;
    int degree = 0;
    mpq_class D;  // ((l-1)/l)^(n-1)
    mpq_class P;  // 1 - (1 - D)/degree
};

LocalFactor local_factor(const MultiquadField& K, u64 l);

// Factor at 2: 1/2 when the field has a totally negative unit, 0 when it
// provably has none.  Undecided status cannot be priced.
mpq_class p2_factor(const MultiquadField& K, const UnitSystem& units);

struct EmpiricalDensity {
    u64 hits = 0;
    u64 total = 0;
    mpq_class ratio;
};

struct DensityEstimate {
    std::vector<i64> field_radicals;
    u64 cutoff = 0;
    mpq_class truncated;             // exact (1/n) P_2 prod_{3 <= l <= cutoff} P_l
    double tail_lower_factor = 1.0;  // certified lower bound on the omitted factors
    double lower = 0.0;              // certified interval containing the full product
    double upper = 0.0;
    std::optional<EmpiricalDensity> empirical;
};

// Truncated product with a rigorous tail bound.  The cutoff must exceed
// 2^(n-1) or the tail estimate degenerates.
DensityEstimate conjectural_density(const MultiquadField& K, const UnitSystem& units,
                                    u64 cutoff, mpfr_prec_t prec = 192);

// One scanned prime.  odd_ls/ranks are filled only when the rank criterion
// actually ran (split p with p = 3 mod 4 over a field with a totally
// negative unit).
struct ScanRow {
    u64 p = 0;
    bool split = false;
    int p_mod_4 = 0;
    std::vector<u64> odd_ls;
    std::vector<int> ranks;
    bool verdict = false;

    bool operator==(const ScanRow&) const = default;
};

// Criterion verdicts over the first num_primes primes (starting at 2).
// Rows reach the sink in prime order and their content is independent of
// the worker count; progress notes go to *progress when given.
EmpiricalDensity scan_primes(const MultiquadField& K, const UnitSystem& units, u64 num_primes,
                             int workers = 1, u64 seed = 0,
                             const std::function<void(const ScanRow&)>& sink = nullptr,
                             std::ostream* progress = nullptr);

DensityEstimate empirical_density(const MultiquadField& K, const UnitSystem& units,
                                  u64 num_primes, int workers = 1, u64 seed = 0);

// Decimal expansion of x with the given number of places, round to nearest.
std::string decimal_string(const mpq_class& x, int digits);

} // namespace rcf
