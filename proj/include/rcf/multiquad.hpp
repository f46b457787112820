#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "rcf/arith.hpp"
#include "rcf/quadratic.hpp"
#include "rcf/real.hpp"

namespace rcf {

enum class Tri { yes, no, unknown };

// Element of a multiquadratic field, as rational coordinates over the basis
// sqrt(r_S) indexed by subsets S of the generating radicals (S=0 gives 1).
struct FieldElement {
    std::vector<mpq_class> c;

    bool operator==(const FieldElement& o) const { return c == o.c; }
    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }
};

// Totally real multiquadratic field Q(sqrt d_1, ..., sqrt d_m), m <= 3.
class MultiquadField {
public:
    explicit MultiquadField(std::vector<i64> gens);

    int m = 0;
    int n = 0; // degree 2^m
    std::vector<i64> radicals;           // generators, ascending
    std::vector<i64> basis_rad;          // basis_rad[mask] = squarefree part of the subset product
    std::vector<i64> subfield_radicals;  // the 2^m - 1 quadratic subfield radicals, ascending

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rational(const mpq_class& x) const;
    // image of (a + b sqrt r)/q for a quadratic subfield radical r
    FieldElement lift_quadratic(i64 r, const mpz_class& a, const mpz_class& b, int q) const;

    FieldElement add(const FieldElement& x, const FieldElement& y) const;
    FieldElement sub(const FieldElement& x, const FieldElement& y) const;
    FieldElement neg(const FieldElement& x) const;
    FieldElement mul(const FieldElement& x, const FieldElement& y) const;
    FieldElement pow(const FieldElement& x, unsigned e) const;

    // conjugation flipping the sign of sqrt(d_i) for each bit i of mask
    FieldElement conj(const FieldElement& x, int mask) const;
    mpq_class norm(const FieldElement& x) const;

    // real embedding determined by a sign mask, at the given precision
    Real embed(const FieldElement& x, int sign_mask, mpfr_prec_t prec) const;

    std::string describe(const FieldElement& x) const;

    bool splits_completely(u64 p) const;

private:
    std::vector<std::vector<mpz_class>> mulg_; // sqrt(r_a) sqrt(r_b) = mulg_[a][b] sqrt(r_{a xor b})
};

// Square root of x in K if one exists, with certified absence otherwise.
// Works through a precision ladder (128 to 4096 bits); candidate coordinates
// are rounded to denominator 4 (m <= 2) or 8 (m = 3) and verified exactly.
// Throws undecided_error only if the ladder tops out with the decision open.
std::optional<FieldElement> is_square_in_field(const MultiquadField& K, const FieldElement& x);

// System of n-1 multiplicatively independent units generating a finite-index
// subgroup of O_K^x, refined from the subfield fundamental units by repeated
// square-class descent.
struct UnitSystem {
    std::vector<i64> field_radicals;
    std::vector<FieldElement> generators; // one per quadratic subfield, possibly refined
    std::vector<int> generator_norms;     // exact norm (+1/-1) of each generator
    mpz_class index_over_subfield_units;  // power of two
    bool candidate_based = false;         // m=3 search is not known exhaustive
    Tri norm_minus_one = Tri::unknown;
};

UnitSystem unit_system(const MultiquadField& K);

Tri has_norm_minus_one_unit(const MultiquadField& K, const UnitSystem& units);

// Class number of K from subfield class numbers and the unit index
// (h = Q * prod h_i / 2^v with v = m(2^(m-1)-1)).
struct KurodaClassNumber {
    long value = 0;
    bool candidate_based = false;
};

KurodaClassNumber kuroda_class_number(const MultiquadField& K, const UnitSystem& units);

} // namespace rcf
