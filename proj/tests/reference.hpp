#pragma once

// High-precision reference values computed with MPFR, independent of the
// library's own series code. Used only by tests.

#include "effdist/interval.hpp"

#include <mpfr.h>

#include <string>

namespace effdist::ref {

inline constexpr mpfr_prec_t kBits = 320;

class Mp {
public:
    Mp() { mpfr_init2(v_, kBits); mpfr_set_zero(v_, 1); }
    Mp(double d) : Mp() { mpfr_set_d(v_, d, MPFR_RNDN); } // NOLINT
    Mp(long d) : Mp() { mpfr_set_si(v_, d, MPFR_RNDN); }  // NOLINT
    Mp(int d) : Mp() { mpfr_set_si(v_, d, MPFR_RNDN); }   // NOLINT
    Mp(const Dyadic& d) : Mp() // NOLINT
    {
        mpfr_set_z_2exp(v_, d.mantissa().get_mpz_t(), static_cast<mpfr_exp_t>(d.exponent()), MPFR_RNDN);
    }
    Mp(const Mp& o) : Mp() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Mp& operator=(const Mp& o) { mpfr_set(v_, o.v_, MPFR_RNDN); return *this; }
    ~Mp() { mpfr_clear(v_); }

    static Mp ratio(long a, long b) { Mp r(a); mpfr_div_si(r.v_, r.v_, b, MPFR_RNDN); return r; }
    static Mp pi() { Mp r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

#define EFFDIST_REF_BIN(op, fn)                                                                                  \
    friend Mp operator op(const Mp& a, const Mp& b) { Mp r; fn(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    EFFDIST_REF_BIN(+, mpfr_add)
    EFFDIST_REF_BIN(-, mpfr_sub)
    EFFDIST_REF_BIN(*, mpfr_mul)
    EFFDIST_REF_BIN(/, mpfr_div)
#undef EFFDIST_REF_BIN
    Mp operator-() const { Mp r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    friend bool operator<(const Mp& a, const Mp& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator<=(const Mp& a, const Mp& b) { return mpfr_lessequal_p(a.v_, b.v_); }

private:
    mpfr_t v_;
};

#define EFFDIST_REF_UN(name, fn)                                                                                 \
    inline Mp name(const Mp& a) { Mp r; fn(r.get(), a.get(), MPFR_RNDN); return r; }
EFFDIST_REF_UN(exp, mpfr_exp)
EFFDIST_REF_UN(sin, mpfr_sin)
EFFDIST_REF_UN(cos, mpfr_cos)
EFFDIST_REF_UN(log, mpfr_log)
EFFDIST_REF_UN(atan, mpfr_atan)
EFFDIST_REF_UN(sqrt, mpfr_sqrt)
EFFDIST_REF_UN(abs, mpfr_abs)
EFFDIST_REF_UN(erf, mpfr_erf)
#undef EFFDIST_REF_UN

inline Mp pow(const Mp& a, long n) { Mp r; mpfr_pow_si(r.get(), a.get(), n, MPFR_RNDN); return r; }

/// True when x lies in iv up to the reference's own rounding (2^-250).
inline bool encloses(const Interval& iv, const Mp& x)
{
    const Mp slack = Mp(Dyadic::pow2(-250));
    return Mp(iv.lo) - slack <= x && x <= Mp(iv.hi) + slack;
}

inline bool encloses(const ComplexInterval& z, const Mp& re, const Mp& im)
{
    return encloses(z.re, re) && encloses(z.im, im);
}

} // namespace effdist::ref
