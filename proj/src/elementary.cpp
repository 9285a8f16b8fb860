#include "effdist/elementary.hpp"

#include "effdist/error.hpp"
#include "effdist/limits.hpp"

#include <cmath>
#include <string>

namespace effdist {

namespace {

using i128 = __int128;

void check_bits(std::int64_t w)
{
    if (w > default_limits().max_working_bits)
        throw Error(ErrorKind::precision_overflow,
                    "working precision " + std::to_string(w) + " exceeds budget " +
                        std::to_string(default_limits().max_working_bits));
}

std::int64_t bitlen(long long v)
{
    std::int64_t n = 0;
    unsigned long long u = v < 0 ? static_cast<unsigned long long>(-v) : static_cast<unsigned long long>(v);
    while (u) {
        ++n;
        u >>= 1;
    }
    return n;
}

// floor(x * 2^w)
mpz_class scaled(const Dyadic& x, std::int64_t w)
{
    mpz_class m = x.mantissa();
    const auto s = x.exponent() + w;
    if (s >= 0)
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
    else
        mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(-s));
    return m;
}

// Integer operations used by the fixed-point kernels, for both word and
// multiprecision backends. Every operation errs by less than one unit.
inline i128 mul_shift(i128 a, i128 b, std::int64_t w) { return (a * b) >> w; }
inline mpz_class mul_shift(const mpz_class& a, const mpz_class& b, std::int64_t w)
{
    mpz_class r = a * b;
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(w));
    return r;
}
inline i128 div_small(i128 a, long n) { return a / n; }
inline mpz_class div_small(const mpz_class& a, long n)
{
    mpz_class r;
    mpz_tdiv_q_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}
inline i128 iabs(i128 a) { return a < 0 ? -a : a; }
inline mpz_class iabs(const mpz_class& a) { return ::abs(a); }
inline mpz_class to_mpz(i128 v)
{
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class r(static_cast<unsigned long>(u >> 64));
    r <<= 64;
    r += mpz_class(static_cast<unsigned long>(u & ~0ULL));
    return neg ? mpz_class(-r) : r;
}
inline mpz_class to_mpz(const mpz_class& v) { return v; }
inline i128 from_mpz(const mpz_class& v, i128*)
{
    const mpz_class a = ::abs(v);
    mpz_class hi = a >> 64;
    mpz_class lo = a - (hi << 64);
    i128 r = (static_cast<i128>(hi.get_ui()) << 64) | static_cast<i128>(lo.get_ui());
    return v < 0 ? -r : r;
}
inline mpz_class from_mpz(const mpz_class& v, mpz_class*) { return v; }

// Taylor sums of e^r, cos r, sin r for a fixed-point argument R = r*2^w known
// to within er units, |r| < 1. Produces sums with rigorous error bounds in
// units of 2^-w (remainder included).
template <class Int>
struct TaylorSums {
    Int exp_sum{0}, cos_sum{0}, sin_sum{0};
    Int exp_err{0}, cos_err{0}, sin_err{0};
};

template <class Int>
TaylorSums<Int> taylor(const Int& R, long er, std::int64_t w, bool want_exp, bool want_trig)
{
    TaylorSums<Int> out;
    Int one = Int(1);
    one = Int(one << w);
    Int term = one;
    Int err = Int(0);
    for (long n = 0;; ++n) {
        if (n > 0) {
            term = div_small(mul_shift(term, R, w), n);
            err = err + Int(er + 3);
        }
        const Int mag = iabs(term);
        if (n > 0 && mag <= Int(2)) {
            // Lagrange / geometric remainder: the first omitted term bounds the
            // trigonometric tails; e^r (|r| <= 1/2) needs twice that.
            const Int rem = mag + err;
            out.exp_err = out.exp_err + Int(2) * rem;
            out.cos_err = out.cos_err + rem;
            out.sin_err = out.sin_err + rem;
            break;
        }
        if (want_exp) {
            out.exp_sum = out.exp_sum + term;
            out.exp_err = out.exp_err + err;
        }
        if (want_trig) {
            const bool negate = ((n / 2) % 2) == 1;
            if (n % 2 == 0) {
                out.cos_sum = negate ? Int(out.cos_sum - term) : Int(out.cos_sum + term);
                out.cos_err = out.cos_err + err;
            } else {
                out.sin_sum = negate ? Int(out.sin_sum - term) : Int(out.sin_sum + term);
                out.sin_err = out.sin_err + err;
            }
        }
    }
    return out;
}

struct Sums {
    mpz_class exp_sum, cos_sum, sin_sum, exp_err, cos_err, sin_err;
};

// Dispatches to 128-bit words when the working precision allows it.
Sums taylor_sums(const Interval& r, std::int64_t w, bool want_exp, bool want_trig)
{
    const mpz_class R = scaled(r.mid(), w);
    const mpz_class radu = scaled(r.rad(), w) + 2;
    if (!radu.fits_slong_p() || radu > mpz_class(1L << 20))
        throw Error(ErrorKind::precision_overflow, "argument enclosure too wide for series evaluation");
    const long er = radu.get_si();
    Sums s;
    if (w <= 58) {
        const auto t = taylor<i128>(from_mpz(R, static_cast<i128*>(nullptr)), er, w, want_exp, want_trig);
        s = {to_mpz(t.exp_sum), to_mpz(t.cos_sum), to_mpz(t.sin_sum), to_mpz(t.exp_err), to_mpz(t.cos_err), to_mpz(t.sin_err)};
    } else {
        const auto t = taylor<mpz_class>(R, er, w, want_exp, want_trig);
        s = {t.exp_sum, t.cos_sum, t.sin_sum, t.exp_err, t.cos_err, t.sin_err};
    }
    return s;
}

Interval from_fixed(const mpz_class& v, const mpz_class& e, std::int64_t w)
{
    return Interval(Dyadic(v - e, -w), Dyadic(v + e, -w));
}

// Series sum_{i<N} s^i x^(2i+1)/(2i+1) for |x| <= 1/3 with s = -1 (atan) or
// s = +1 (atanh), remainder added; interval arithmetic clamped at 2^-w.
Interval odd_series(const Interval& x, std::int64_t w_out, bool alternating)
{
    const std::int64_t w = w_out + bitlen(w_out) + 2;
    const Interval x2 = sqr(x).round_out(w + 4);
    Interval power = x;
    Interval sum(0);
    const Dyadic tiny = Dyadic::pow2(-(w + 1));
    for (long i = 0;; ++i) {
        const Interval term = div(power, Interval(Dyadic(2 * i + 1)), w + 4);
        if (term.mag() < tiny) {
            // |x|^(2i+1)/(2i+1) * 1/(1 - x^2) bounds the tail; x^2 <= 1/9.
            const Dyadic bound = term.mag() * Dyadic(9).mul_pow2(-3);
            sum = sum.widen(bound);
            break;
        }
        sum = (alternating && (i % 2 == 1)) ? sum - term : sum + term;
        power = (power * x2).round_out(w + 4);
    }
    return sum.round_out(w_out + 2);
}

// atanh(1/3) = ln(2)/2 and Machin's formula for pi, cached per thread at the
// highest precision requested so far.
struct ConstCache {
    std::int64_t bits = -1;
    Interval value;
};

Interval cached(ConstCache& c, std::int64_t p, Interval (*compute)(std::int64_t))
{
    if (c.bits < p) {
        const std::int64_t w = std::max<std::int64_t>(p + 16, c.bits * 2);
        c.value = compute(w);
        c.bits = w;
    }
    return c.value;
}

Interval compute_pi(std::int64_t w)
{
    check_bits(w);
    const Interval a = odd_series(div(Interval(1), Interval(5), w + 8), w + 8, true);
    const Interval b = odd_series(div(Interval(1), Interval(239), w + 8), w + 8, true);
    return (a.mul_pow2(4) - b.mul_pow2(2)).round_out(w);
}

Interval compute_ln2(std::int64_t w)
{
    check_bits(w);
    return odd_series(div(Interval(1), Interval(3), w + 4), w + 4, false).mul_pow2(1).round_out(w);
}

Interval exp_point(const Dyadic& x, std::int64_t p)
{
    if (x.is_zero())
        return Interval(1);
    if (x < Dyadic(-(p + 2))) // e^x < e^-(p+2) < 2^-(p+2)
        return Interval(Dyadic(), Dyadic::pow2(-(p + 2)));
    const double xd = x.to_double();
    if (xd > 1e9)
        throw Error(ErrorKind::precision_overflow, "exp argument too large");
    const long long n = std::llround(xd / 0.6931471805599453);
    std::int64_t w = std::max<std::int64_t>(p + n + 16, 24);
    for (;;) {
        check_bits(w);
        const Interval l2 = ln2(w + bitlen(n) + 4);
        const Interval r = Interval(x) - Interval(Dyadic(static_cast<long>(n))) * l2;
        const Sums s = taylor_sums(r.round_out(w + 2), w, true, false);
        Interval res = from_fixed(s.exp_sum, s.exp_err, w).mul_pow2(n);
        if (res.lo.sign() < 0)
            res.lo = Dyadic();
        if (res.width() <= Dyadic::pow2(-p))
            return res;
        w += 32;
    }
}

std::pair<Interval, Interval> cos_sin_point(const Dyadic& x, std::int64_t p)
{
    if (x.is_zero())
        return {Interval(1), Interval(0)};
    const double xd = x.to_double();
    if (!(std::fabs(xd) < 1e15))
        return {Interval(-1, 1), Interval(-1, 1)};
    const long long j = std::llround(xd / 1.5707963267948966);
    std::int64_t w = p + 12;
    for (;;) {
        check_bits(w);
        const Interval half_pi = pi(w + bitlen(j) + 4).mul_pow2(-1);
        const Interval r = Interval(x) - Interval(Dyadic(static_cast<long>(j))) * half_pi;
        const Sums s = taylor_sums(r.round_out(w + 2), w, false, true);
        const Interval c = from_fixed(s.cos_sum, s.cos_err, w);
        const Interval sn = from_fixed(s.sin_sum, s.sin_err, w);
        Interval cx, sx;
        switch (((j % 4) + 4) % 4) {
        case 0: cx = c; sx = sn; break;
        case 1: cx = -sn; sx = c; break;
        case 2: cx = -c; sx = -sn; break;
        default: cx = sn; sx = -c; break;
        }
        if (cx.width() <= Dyadic::pow2(-p) && sx.width() <= Dyadic::pow2(-p)) {
            const Interval unit(-1, 1);
            return {intersect(cx, unit), intersect(sx, unit)};
        }
        w += 32;
    }
}

// Range of sin(x + phase) on a wide interval via endpoints plus interior
// extrema; phase is 0 for sin and pi/2 for cos.
Interval trig_range(const Interval& x, std::int64_t p, bool cosine)
{
    if (x.width() >= Dyadic(7))
        return Interval(-1, 1);
    const auto lo = cos_sin_point(x.lo, p);
    const auto hi = cos_sin_point(x.hi, p);
    Interval r = cosine ? hull(lo.first, hi.first) : hull(lo.second, hi.second);
    const Interval pi_iv = pi(p + 8);
    const double two_pi = 6.283185307179586;
    const long long j0 = static_cast<long long>(std::floor(x.lo.to_double() / two_pi)) - 1;
    const long long j1 = static_cast<long long>(std::ceil(x.hi.to_double() / two_pi)) + 1;
    for (long long j = j0; j <= j1; ++j) {
        // maxima at (2j + 1/2) pi for sin, 2j pi for cos; minima half a turn later
        const Interval base = Interval(Dyadic(static_cast<long>(4 * j + (cosine ? 0 : 1)))).mul_pow2(-1) * pi_iv;
        const Interval low = base + pi_iv;
        if (base.intersects(x))
            r.hi = Dyadic(1);
        if (low.intersects(x))
            r.lo = Dyadic(-1);
    }
    return r;
}

Interval sinc_series(const Interval& u, std::int64_t p)
{
    // sum (-1)^i u^(2i) / (2i+1)!, |u| <= 1/2
    const std::int64_t w = p + 6;
    const Interval u2 = sqr(u).round_out(w + 4);
    Interval term(1);
    Interval sum(1);
    const Dyadic tiny = Dyadic::pow2(-(w + 1));
    for (long i = 1;; ++i) {
        term = div(term * u2, Interval(Dyadic((2 * i) * (2 * i + 1))), w + 4);
        if (term.mag() < tiny) {
            // later terms shrink by at least a factor 1/20
            sum = sum.widen(term.mag().mul_pow2(1));
            break;
        }
        sum = (i % 2 == 1) ? sum - term : sum + term;
    }
    return sum.round_out(w);
}

Interval sinc_deriv_series(const Interval& u, std::int64_t p)
{
    // u * sum_{i>=1} (-1)^i 2i u^(2i-2) / (2i+1)!, |u| <= 1/2
    const std::int64_t w = p + 6;
    const Interval u2 = sqr(u).round_out(w + 4);
    Interval term = div(Interval(1), Interval(3), w + 4); // 2i u^(2i-2) / (2i+1)!
    Interval sum = -term;
    const Dyadic tiny = Dyadic::pow2(-(w + 1));
    for (long i = 2;; ++i) {
        term = div(term * u2, Interval(Dyadic((2 * i - 2) * (2 * i + 1))), w + 4);
        if (term.mag() < tiny) {
            sum = sum.widen(term.mag().mul_pow2(1));
            break;
        }
        sum = (i % 2 == 1) ? sum - term : sum + term;
    }
    return (u * sum).round_out(w);
}

Interval log_point(const Dyadic& x, std::int64_t p)
{
    if (x.sign() <= 0)
        throw Error(ErrorKind::invalid_argument, "log of a nonpositive number");
    std::int64_t e = x.ilog2();
    Dyadic y = x.mul_pow2(-e); // in [1, 2)
    if (y > Dyadic(3).mul_pow2(-1)) {
        y = y.mul_pow2(-1);
        ++e;
    }
    const std::int64_t w = p + bitlen(e) + 10;
    check_bits(w);
    const Interval u = div(Interval(y - Dyadic(1)), Interval(y + Dyadic(1)), w + 4);
    const Interval at = odd_series(u, w, false).mul_pow2(1);
    return (Interval(Dyadic(static_cast<long>(e))) * ln2(w + bitlen(e) + 2) + at).round_out(p + 2);
}

Interval atan_point(const Dyadic& x, std::int64_t p)
{
    if (x.is_zero())
        return Interval(0);
    const std::int64_t w = p + 12;
    check_bits(w);
    if (x.abs() > Dyadic(1)) {
        const Interval inv = div(Interval(1), Interval(x), w + 4);
        const Interval half_pi = pi(w + 4).mul_pow2(-1);
        // atan x = sign(x) pi/2 - atan(1/x)
        Interval t = Interval(0);
        // reduce inv through the same path (|inv| < 1)
        Interval y = inv;
        for (int i = 0; i < 3; ++i) {
            const Interval s = sqrt((Interval(1) + sqr(y)).round_out(w + 4), w + 4);
            y = div(y, Interval(1) + s, w + 4);
        }
        t = odd_series(y, w, true).mul_pow2(3);
        return ((x.sign() > 0 ? half_pi : -half_pi) - t).round_out(p + 2);
    }
    // atan x = 2 atan(x / (1 + sqrt(1 + x^2))), applied three times
    Interval y(x);
    for (int i = 0; i < 3; ++i) {
        const Interval s = sqrt((Interval(1) + sqr(y)).round_out(w + 4), w + 4);
        y = div(y, Interval(1) + s, w + 4);
    }
    return odd_series(y, w, true).mul_pow2(3).round_out(p + 2);
}

} // namespace

Interval pi(std::int64_t p)
{
    thread_local ConstCache cache;
    return cached(cache, p, compute_pi);
}

Interval ln2(std::int64_t p)
{
    thread_local ConstCache cache;
    return cached(cache, p, compute_ln2);
}

Interval exp(const Interval& x, std::int64_t p)
{
    if (x.is_point())
        return exp_point(x.lo, p);
    const Dyadic r = x.rad();
    if (r <= Dyadic(1).mul_pow2(-1)) {
        // e^x in e^m [1 - r, 1 + r + r^2] for |x - m| <= r <= 1/2
        const Interval em = exp_point(x.mid(), p + 2);
        const Interval factor(Dyadic(1) - r, Dyadic(1) + r + r * r);
        Interval res = (em * factor).round_out(p + 2);
        if (res.lo.sign() < 0)
            res.lo = Dyadic();
        return res;
    }
    return Interval(exp_point(x.lo, p + 1).lo, exp_point(x.hi, p + 1).hi);
}

std::pair<Interval, Interval> cos_sin(const Interval& x, std::int64_t p)
{
    if (x.is_point())
        return cos_sin_point(x.lo, p);
    const Dyadic r = x.rad();
    if (r <= Dyadic(1).mul_pow2(-3)) {
        // centred form: sin x in s_m + [-r, r] cos(x), cos(x) in c_m +- r
        const auto [cm, sm] = cos_sin_point(x.mid(), p + 2);
        const Interval dx = Interval(-r, r);
        const Interval cx = (cm - dx * sm.widen(r)).round_out(p + 2);
        const Interval sx = (sm + dx * cm.widen(r)).round_out(p + 2);
        const Interval unit(-1, 1);
        return {intersect(cx, unit), intersect(sx, unit)};
    }
    return {trig_range(x, p + 1, true), trig_range(x, p + 1, false)};
}

Interval sin(const Interval& x, std::int64_t p) { return cos_sin(x, p).second; }
Interval cos(const Interval& x, std::int64_t p) { return cos_sin(x, p).first; }

ComplexInterval cis(const Interval& theta, std::int64_t p)
{
    auto [c, s] = cos_sin(theta, p);
    return {std::move(c), std::move(s)};
}

Interval exp_neg_sq_half(const Interval& x, std::int64_t p)
{
    return exp(-sqr(x).mul_pow2(-1), p);
}

Interval sinc(const Interval& x, std::int64_t p)
{
    const Dyadic half = Dyadic(1).mul_pow2(-1);
    if (x.mag() <= half)
        return sinc_series(x, p);
    if (x.mig() >= half)
        return div(sin(x, p + 2), x, p + 2);
    // x straddles the series region: split and take the hull
    Interval r = sinc_series(intersect(x, Interval(-half, half)), p);
    if (x.lo < -half)
        r = hull(r, div(sin(Interval(x.lo, -half), p + 2), Interval(x.lo, -half), p + 2));
    if (x.hi > half)
        r = hull(r, div(sin(Interval(half, x.hi), p + 2), Interval(half, x.hi), p + 2));
    return r;
}

Interval sinc_deriv(const Interval& x, std::int64_t p)
{
    const Dyadic half = Dyadic(1).mul_pow2(-1);
    if (!x.is_point()) {
        // mean value form: |sinc''| <= 1/3, and |sinc'| <= 1/2 everywhere
        const Interval m = sinc_deriv(Interval(x.mid()), p + 1);
        const Interval r = m.widen(Dyadic::div_up(x.rad(), Dyadic(3), p + 2));
        return Interval(max(r.lo, -half), min(r.hi, half));
    }
    if (x.mag() <= half)
        return sinc_deriv_series(x, p);
    const std::int64_t q = p + 4 + std::max<std::int64_t>(0, -x.mig().ilog2());
    return div(cos(x, q) - sinc(x, q), x, q);
}

Interval log(const Interval& x, std::int64_t p)
{
    if (x.is_point())
        return log_point(x.lo, p);
    return Interval(log_point(x.lo, p + 1).lo, log_point(x.hi, p + 1).hi);
}

Interval atan(const Interval& x, std::int64_t p)
{
    if (x.is_point())
        return atan_point(x.lo, p);
    return Interval(atan_point(x.lo, p + 1).lo, atan_point(x.hi, p + 1).hi);
}

Interval iv_elem(ElemFn fn, const Interval& a, std::int64_t k)
{
    switch (fn) {
    case ElemFn::exp: return exp(a, k);
    case ElemFn::sin: return sin(a, k);
    case ElemFn::cos: return cos(a, k);
    case ElemFn::exp_neg_sq_half: return exp_neg_sq_half(a, k);
    }
    throw Error(ErrorKind::invalid_argument, "unknown elementary function");
}

} // namespace effdist
