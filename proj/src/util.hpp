#pragma once

// Small helpers shared by the library sources.

#include "effdist/error.hpp"
#include "effdist/interval.hpp"
#include "effdist/limits.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>

namespace effdist::detail {

inline std::int64_t bits_of(std::uint64_t n)
{
    std::int64_t b = 0;
    while (n) {
        ++b;
        n >>= 1;
    }
    return b;
}

// Bits above the binary point needed for |x| (0 when |x| < 1).
inline std::int64_t int_bits(const Dyadic& x)
{
    return x.is_zero() ? 0 : std::max<std::int64_t>(0, x.ilog2() + 1);
}

// Smallest e with |x| < 2^e; x nonzero.
inline std::int64_t exp_above(const Dyadic& x) { return x.ilog2() + 1; }

inline Interval rational(const mpq_class& q, std::int64_t p)
{
    const Dyadic num(q.get_num(), 0), den(q.get_den(), 0);
    if (q.get_den() == 1)
        return Interval(num);
    return Interval(Dyadic::div_down(num, den, p), Dyadic::div_up(num, den, p));
}

inline mpq_class to_mpq(const Dyadic& d)
{
    mpq_class q(d.mantissa());
    if (d.exponent() >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(d.exponent()));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-d.exponent()));
    return q;
}

inline Interval ratio(long num, long den, std::int64_t p)
{
    return div(Interval(Dyadic(num)), Interval(Dyadic(den)), p);
}

// Calls fn(p) for increasing p until the result is at most 2^-k wide.
template <class F>
auto refine_to(std::int64_t k, std::int64_t p0, F&& fn)
{
    const Dyadic target = Dyadic::pow2(-k);
    for (std::int64_t p = p0;; p += 16 + (p - k) / 2) {
        auto v = fn(p);
        if (v.width() <= target)
            return v;
        if (p > default_limits().max_working_bits)
            throw Error(ErrorKind::precision_overflow, "cannot reach width 2^-" + std::to_string(k));
    }
}

} // namespace effdist::detail
