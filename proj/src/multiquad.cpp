#include "rcf/multiquad.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace rcf {

namespace {

int chi(int S, int t) { return (__builtin_popcount((unsigned)(S & t)) & 1) ? -1 : 1; }

} // namespace

MultiquadField::MultiquadField(std::vector<i64> gens) {
    if (gens.empty()) throw input_error("MultiquadField: need at least one radical");
    if (gens.size() > 3)
        throw unsupported_error("MultiquadField: only m <= 3 generators are supported");
    std::sort(gens.begin(), gens.end());
    for (i64 d : gens) {
        if (d < 2) throw input_error("MultiquadField: radicals must be integers > 1");
        if (!is_squarefree(d))
            throw input_error("MultiquadField: radical " + std::to_string(d) + " is not squarefree");
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (i != j && gens[j] % gens[i] == 0)
                throw invariant_error("MultiquadField: radical " + std::to_string(gens[i]) +
                                      " divides radical " + std::to_string(gens[j]));
    radicals = gens;
    m = (int)gens.size();
    n = 1 << m;

    basis_rad.assign(n, 1);
    for (int mask = 1; mask < n; ++mask) {
        int low = mask & -mask;
        int rest = mask ^ low;
        i64 a = basis_rad[rest];
        i64 b = radicals[__builtin_ctz((unsigned)low)];
        i64 g = std::gcd(a, b);
        basis_rad[mask] = (a / g) * (b / g);
    }
    std::set<i64> distinct(basis_rad.begin() + 1, basis_rad.end());
    if ((int)distinct.size() != n - 1)
        throw invariant_error("MultiquadField: subset radicals collide (degree drops below 2^m)");
    subfield_radicals.assign(distinct.begin(), distinct.end());

    mulg_.assign(n, std::vector<mpz_class>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            mpz_class prod = mpz_class(basis_rad[a]) * basis_rad[b];
            mpz_class q = prod / basis_rad[a ^ b];
            check_invariant(prod % basis_rad[a ^ b] == 0, "MultiquadField: basis product not integral");
            mpz_class g = sqrt(q);
            check_invariant(g * g == q, "MultiquadField: basis product coefficient not a square");
            mulg_[a][b] = g;
        }
}

FieldElement MultiquadField::zero() const {
    FieldElement x;
    x.c.assign(n, 0);
    return x;
}

FieldElement MultiquadField::one() const { return from_rational(1); }

FieldElement MultiquadField::from_rational(const mpq_class& v) const {
    FieldElement x = zero();
    x.c[0] = v;
    return x;
}

FieldElement MultiquadField::lift_quadratic(i64 r, const mpz_class& a, const mpz_class& b, int q) const {
    auto it = std::find(basis_rad.begin(), basis_rad.end(), r);
    if (it == basis_rad.end())
        throw input_error("lift_quadratic: " + std::to_string(r) + " is not a subfield radical");
    FieldElement x = zero();
    x.c[0] = mpq_class(a) / q;
    x.c[it - basis_rad.begin()] = mpq_class(b) / q;
    x.c[0].canonicalize();
    x.c[it - basis_rad.begin()].canonicalize();
    return x;
}

FieldElement MultiquadField::add(const FieldElement& x, const FieldElement& y) const {
    FieldElement r = zero();
    for (int S = 0; S < n; ++S) r.c[S] = x.c[S] + y.c[S];
    return r;
}

FieldElement MultiquadField::sub(const FieldElement& x, const FieldElement& y) const {
    FieldElement r = zero();
    for (int S = 0; S < n; ++S) r.c[S] = x.c[S] - y.c[S];
    return r;
}

FieldElement MultiquadField::neg(const FieldElement& x) const {
    FieldElement r = zero();
    for (int S = 0; S < n; ++S) r.c[S] = -x.c[S];
    return r;
}

FieldElement MultiquadField::mul(const FieldElement& x, const FieldElement& y) const {
    FieldElement r = zero();
    for (int a = 0; a < n; ++a) {
        if (x.c[a] == 0) continue;
        for (int b = 0; b < n; ++b) {
            if (y.c[b] == 0) continue;
            r.c[a ^ b] += x.c[a] * y.c[b] * mulg_[a][b];
        }
    }
    return r;
}

FieldElement MultiquadField::pow(const FieldElement& x, unsigned e) const {
    FieldElement r = one();
    FieldElement base = x;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FieldElement MultiquadField::conj(const FieldElement& x, int mask) const {
    FieldElement r = x;
    for (int S = 0; S < n; ++S)
        if (chi(S, mask) < 0) r.c[S] = -r.c[S];
    return r;
}

mpq_class MultiquadField::norm(const FieldElement& x) const {
    FieldElement acc = x;
    for (int i = 0; i < m; ++i) acc = mul(acc, conj(acc, 1 << i));
    for (int S = 1; S < n; ++S)
        check_invariant(acc.c[S] == 0, "norm: conjugate fold left an irrational part");
    return acc.c[0];
}

Real MultiquadField::embed(const FieldElement& x, int sign_mask, mpfr_prec_t prec) const {
    Real acc(prec);
    for (int S = 0; S < n; ++S) {
        if (x.c[S] == 0) continue;
        Real t = Real::of(x.c[S], prec) * sqrt(Real::of(mpz_class(basis_rad[S]), prec));
        if (chi(S, sign_mask) < 0) t = -t;
        acc = acc + t;
    }
    return acc;
}

std::string MultiquadField::describe(const FieldElement& x) const {
    mpz_class den = 1;
    for (int S = 0; S < n; ++S) den = lcm(den, x.c[S].get_den());
    std::ostringstream out;
    bool first = true;
    for (int S = 0; S < n; ++S) {
        mpq_class scaled = x.c[S] * den;
        mpz_class k = scaled.get_num();
        if (k == 0) continue;
        if (first) {
            if (k < 0) out << "-";
        } else {
            out << (k < 0 ? " - " : " + ");
        }
        mpz_class a = abs(k);
        if (S == 0) {
            out << a.get_str();
        } else {
            if (a != 1) out << a.get_str() << "*";
            out << "r" << basis_rad[S];
        }
        first = false;
    }
    if (first) out << "0";
    std::string s = out.str();
    if (den != 1) s = "(" + s + ")/" + den.get_str();
    return s;
}

bool MultiquadField::splits_completely(u64 p) const {
    if (p < 3 || (p & 1) == 0)
        throw input_error("splits_completely: p must be an odd prime");
    for (i64 d : radicals) {
        if ((i64)(p) <= d && d % (i64)p == 0) return false;
        if (jacobi(d, p) != 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------- squares

namespace {

enum class SqOutcome { found, absent, retry };

struct SqAttempt {
    SqOutcome outcome;
    FieldElement root;
};

// One pass at fixed precision.  All error bounds are computed upward at a
// small side precision, so "absent" is certified and "found" is verified
// exactly before being reported.
SqAttempt try_square(const MultiquadField& K, const FieldElement& x, mpfr_prec_t B) {
    const int nn = K.n;
    const long q = K.m == 3 ? 8 : 4;
    const mpfr_prec_t EP = 64;

    std::vector<Real> rt;
    rt.reserve(nn);
    for (int S = 0; S < nn; ++S) rt.push_back(sqrt(Real::of(mpz_class(K.basis_rad[S]), B)));

    // T bounds sum_S |c_S| sqrt(r_S), hence every embedding magnitude
    Real T(EP);
    for (int S = 0; S < nn; ++S) {
        if (x.c[S] == 0) continue;
        Real t1(EP);
        mpfr_set_q(t1.get(), mpq_class(abs(x.c[S])).get_mpq_t(), MPFR_RNDU);
        mpfr_mul(t1.get(), t1.get(), rt[S].get(), MPFR_RNDU);
        mpfr_add(T.get(), T.get(), t1.get(), MPFR_RNDU);
    }
    Real err_v = scale2(T, -(long)B + 6);

    std::vector<Real> v, w, err_w;
    for (int t = 0; t < nn; ++t) {
        Real vt(B);
        for (int S = 0; S < nn; ++S) {
            if (x.c[S] == 0) continue;
            Real term = Real::of(x.c[S], B) * rt[S];
            if (chi(S, t) < 0) term = -term;
            vt = vt + term;
        }
        Real mvt = abs(vt);
        if (mpfr_cmp(mvt.get(), err_v.get()) <= 0) return {SqOutcome::retry, {}};
        if (vt.sign() < 0) return {SqOutcome::absent, {}};
        Real wt = sqrt(vt);
        Real ew(EP);
        mpfr_div(ew.get(), err_v.get(), wt.get(), MPFR_RNDU);
        Real e2 = scale2(wt, -(long)B + 2);
        mpfr_add(ew.get(), ew.get(), e2.get(), MPFR_RNDU);
        v.push_back(vt);
        w.push_back(wt);
        err_w.push_back(ew);
    }

    Real sum_err_w(EP), wsum(EP);
    for (int t = 0; t < nn; ++t) {
        mpfr_add(sum_err_w.get(), sum_err_w.get(), err_w[t].get(), MPFR_RNDU);
        mpfr_add(wsum.get(), wsum.get(), w[t].get(), MPFR_RNDU);
    }
    Real base(EP);
    {
        Real r2 = scale2(wsum, -(long)B + 6);
        mpfr_add(base.get(), sum_err_w.get(), r2.get(), MPFR_RNDU);
        mpfr_mul_si(base.get(), base.get(), 2 * q, MPFR_RNDU);
    }
    std::vector<Real> errq; // error bound on q * coordinate S
    errq.reserve(nn);
    bool rounding_certain = true;
    Real quarter = Real::of(0.25, EP);
    for (int S = 0; S < nn; ++S) {
        Real e(EP);
        mpfr_div_si(e.get(), base.get(), nn, MPFR_RNDU);
        mpfr_div(e.get(), e.get(), rt[S].get(), MPFR_RNDU);
        if (!(e < quarter)) rounding_certain = false;
        errq.push_back(e);
    }

    bool saw_inconclusive = false;
    for (int pat = 0; pat < (1 << (nn - 1)); ++pat) {
        bool ruled_out = false;
        std::vector<mpq_class> cand(nn);
        for (int S = 0; S < nn && !ruled_out; ++S) {
            Real num(B);
            for (int t = 0; t < nn; ++t) {
                int s = (t > 0 && ((pat >> (t - 1)) & 1)) ? -1 : 1;
                Real term = w[t];
                if (s * chi(S, t) < 0) term = -term;
                num = num + term;
            }
            Real bq = num * Real::of(q, B) / (Real::of((long)nn, B) * rt[S]);
            mpz_class k;
            mpfr_get_z(k.get_mpz_t(), bq.get(), MPFR_RNDN);
            Real resid = abs(bq - Real::of(k, B));
            if (resid > errq[S]) {
                ruled_out = true;
            } else {
                cand[S] = mpq_class(k) / q;
                cand[S].canonicalize();
            }
        }
        if (ruled_out) continue;
        if (!rounding_certain) {
            saw_inconclusive = true;
            continue;
        }
        FieldElement y;
        y.c = cand;
        if (K.mul(y, y) == x) return {SqOutcome::found, y};
        // a genuine candidate would have verified; this pattern is dead
    }
    if (saw_inconclusive) return {SqOutcome::retry, {}};
    return {SqOutcome::absent, {}};
}

} // namespace

std::optional<FieldElement> is_square_in_field(const MultiquadField& K, const FieldElement& x) {
    if ((int)x.c.size() != K.n) throw input_error("is_square_in_field: element has wrong shape");
    if (x.is_zero()) throw input_error("is_square_in_field: element must be nonzero");
    // clear denominators: a root of an integral element is integral, so the
    // denominator bound in try_square is valid for xs = x * t^2
    mpz_class t = 1;
    for (const auto& q : x.c) t = lcm(t, q.get_den());
    FieldElement xs = K.zero();
    for (int S = 0; S < K.n; ++S) {
        xs.c[S] = x.c[S] * t * t;
        xs.c[S].canonicalize();
    }
    for (mpfr_prec_t B = 128; B <= 4096; B *= 2) {
        SqAttempt a = try_square(K, xs, B);
        if (a.outcome == SqOutcome::found) {
            FieldElement y = K.zero();
            for (int S = 0; S < K.n; ++S) {
                y.c[S] = a.root.c[S] / t;
                y.c[S].canonicalize();
            }
            return y;
        }
        if (a.outcome == SqOutcome::absent) return std::nullopt;
    }
    throw undecided_error("is_square_in_field: undecided at 4096-bit precision");
}

// ------------------------------------------------------------ unit system

namespace {

// Rank of the log-embedding matrix must be full (n-1) for a unit system;
// computed at growing precision until every pivot decision is clear.
void verify_independence(const MultiquadField& K, const std::vector<FieldElement>& gens) {
    const int rows = (int)gens.size();
    const int cols = K.n;
    for (mpfr_prec_t prec = 200; prec <= 3200; prec *= 2) {
        std::vector<std::vector<Real>> M(rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                M[i].push_back(log(abs(K.embed(gens[i], j, prec))));
        Real big = Real::of(1L, 32);
        mpfr_mul_2si(big.get(), big.get(), -(long)prec / 3, MPFR_RNDN);
        Real tiny = Real::of(1L, 32);
        mpfr_mul_2si(tiny.get(), tiny.get(), -2 * (long)prec / 3, MPFR_RNDN);

        int rank = 0;
        bool ambiguous = false;
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int piv = -1;
            Real best(prec);
            for (int i = r; i < rows; ++i) {
                Real a = abs(M[i][c]);
                if (piv < 0 || a > best) { piv = i; best = a; }
            }
            if (best < big) {
                if (!(best < tiny)) ambiguous = true;
                continue;
            }
            std::swap(M[piv], M[r]);
            for (int i = r + 1; i < rows; ++i) {
                Real f = M[i][c] / M[r][c];
                for (int j = c; j < cols; ++j) M[i][j] = M[i][j] - f * M[r][j];
            }
            ++rank;
            ++r;
        }
        if (ambiguous) continue;
        check_invariant(rank == rows, "unit system generators are multiplicatively dependent");
        return;
    }
    throw invariant_error("unit independence check stayed ambiguous at 3200-bit precision");
}

int unit_norm_sign(const MultiquadField& K, const FieldElement& u) {
    mpq_class nm = K.norm(u);
    check_invariant(nm == 1 || nm == -1, "unit candidate does not have unit norm");
    return nm == 1 ? 1 : -1;
}

} // namespace

UnitSystem unit_system(const MultiquadField& K) {
    UnitSystem S;
    S.field_radicals = K.radicals;
    S.index_over_subfield_units = 1;
    bool all_subfields_minus = true;
    for (i64 r : K.subfield_radicals) {
        RealQuadraticField k(r);
        FundamentalUnit u = fundamental_unit(k);
        if (u.norm != -1) all_subfields_minus = false;
        S.generators.push_back(K.lift_quadratic(r, u.a, u.b, u.q));
        // the norm here is N_{K/Q}, so a lifted quadratic unit of norm -1
        // still carries +1 once the degree exceeds 2
        S.generator_norms.push_back(unit_norm_sign(K, S.generators.back()));
    }

    if (K.m == 1) {
        S.norm_minus_one = S.generator_norms[0] == -1 ? Tri::yes : Tri::no;
        verify_independence(K, S.generators);
        return S;
    }

    if (K.m == 2) {
        if (!all_subfields_minus) {
            S.norm_minus_one = Tri::no;
        } else {
            // norm -1 exists iff the product of the three subfield units is a
            // square in K (up to sign)
            FieldElement prod = K.mul(K.mul(S.generators[0], S.generators[1]), S.generators[2]);
            bool sq = is_square_in_field(K, prod).has_value() ||
                      is_square_in_field(K, K.neg(prod)).has_value();
            S.norm_minus_one = sq ? Tri::yes : Tri::no;
        }
    }

    // square-class descent: whenever +-(a product of current generators) is a
    // square, its root replaces one factor and doubles the unit index
    const int g = (int)S.generators.size();
    int rounds = 0;
    for (;;) {
        bool found = false;
        for (unsigned e = 1; e < (1u << g) && !found; ++e) {
            FieldElement prod = K.one();
            for (int i = 0; i < g; ++i)
                if ((e >> i) & 1) prod = K.mul(prod, S.generators[i]);
            for (int sign = 0; sign < 2 && !found; ++sign) {
                FieldElement cand = sign ? K.neg(prod) : prod;
                auto root = is_square_in_field(K, cand);
                if (root) {
                    int j = __builtin_ctz(e);
                    S.generators[j] = *root;
                    S.generator_norms[j] = unit_norm_sign(K, *root);
                    S.index_over_subfield_units *= 2;
                    found = true;
                }
            }
        }
        if (!found) break;
        if (++rounds > 24) throw invariant_error("unit square-class descent failed to stabilize");
    }

    if (K.m == 3) {
        S.candidate_based = true;
        if (!all_subfields_minus) {
            S.norm_minus_one = Tri::no;
        } else {
            bool direct = false;
            for (int nrm : S.generator_norms)
                if (nrm == -1) direct = true;
            if (direct) {
                S.norm_minus_one = Tri::yes;
            } else {
                KurodaClassNumber h = kuroda_class_number(K, S);
                S.norm_minus_one = (h.value % 2 == 1) ? Tri::no : Tri::unknown;
            }
        }
    }

    verify_independence(K, S.generators);
    return S;
}

Tri has_norm_minus_one_unit(const MultiquadField& K, const UnitSystem& units) {
    if (units.field_radicals != K.radicals)
        throw input_error("has_norm_minus_one_unit: unit system belongs to a different field");
    return units.norm_minus_one;
}

KurodaClassNumber kuroda_class_number(const MultiquadField& K, const UnitSystem& units) {
    if (units.field_radicals != K.radicals)
        throw input_error("kuroda_class_number: unit system belongs to a different field");
    int v = K.m * ((1 << (K.m - 1)) - 1);
    mpz_class num = units.index_over_subfield_units;
    for (i64 r : K.subfield_radicals) num *= class_number(RealQuadraticField(r));
    mpz_class den = mpz_class(1) << v;
    check_invariant(num % den == 0, "Kuroda quotient is not an integer");
    mpz_class h = num / den;
    check_invariant(h > 0 && h.fits_slong_p(), "Kuroda class number out of range");
    KurodaClassNumber out;
    out.value = h.get_si();
    out.candidate_based = units.candidate_based;
    return out;
}

} // namespace rcf
