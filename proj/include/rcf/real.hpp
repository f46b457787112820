#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace rcf {

// Value-semantic wrapper over an mpfr_t.  Arithmetic rounds to nearest at the
// wider operand precision; callers needing directed rounding use get() with
// the mpfr API directly.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(Real o) {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(long x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(const mpz_class& x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real of(const mpq_class& x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real of(double x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }

    std::string str(std::size_t digits) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", (int)digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    mpfr_t v_;
};

inline mpfr_prec_t join_prec(const Real& a, const Real& b) {
    return std::max(a.prec(), b.prec());
}

inline Real operator+(const Real& a, const Real& b) {
    Real r(join_prec(a, b));
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
inline Real operator-(const Real& a, const Real& b) {
    Real r(join_prec(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
inline Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}
inline Real operator*(const Real& a, const Real& b) {
    Real r(join_prec(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
inline Real operator/(const Real& a, const Real& b) {
    Real r(join_prec(a, b));
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
inline Real sqrt(const Real& a) {
    Real r(a.prec());
    mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
    return r;
}
inline Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}
inline Real log(const Real& a) {
    Real r(a.prec());
    mpfr_log(r.get(), a.get(), MPFR_RNDN);
    return r;
}
// a * 2^e
inline Real scale2(const Real& a, long e) {
    Real r(a.prec());
    mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN);
    return r;
}

inline bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()) < 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()) >= 0; }

} // namespace rcf
