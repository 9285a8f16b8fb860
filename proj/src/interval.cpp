#include "effdist/interval.hpp"

#include "effdist/error.hpp"

namespace effdist {

Interval::Interval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h))
{
    if (hi < lo)
        throw Error(ErrorKind::invalid_argument, "interval with lo > hi: [" + lo.str() + ", " + hi.str() + "]");
}

Dyadic Interval::mig() const
{
    if (contains_zero())
        return Dyadic();
    return min(lo.abs(), hi.abs());
}

Interval operator+(const Interval& a, const Interval& b)
{
    Interval r;
    r.lo = a.lo + b.lo;
    r.hi = a.hi + b.hi;
    return r;
}

Interval operator-(const Interval& a, const Interval& b)
{
    Interval r;
    r.lo = a.lo - b.hi;
    r.hi = a.hi - b.lo;
    return r;
}

Interval operator-(const Interval& a)
{
    Interval r;
    r.lo = -a.hi;
    r.hi = -a.lo;
    return r;
}

Interval operator*(const Interval& a, const Interval& b)
{
    Interval r;
    if (a.is_point() && b.is_point()) {
        r.lo = a.lo * b.lo;
        r.hi = r.lo;
        return r;
    }
    const int al = a.lo.sign(), ah = a.hi.sign();
    const int bl = b.lo.sign(), bh = b.hi.sign();
    if (al >= 0) {
        if (bl >= 0) {
            r.lo = a.lo * b.lo;
            r.hi = a.hi * b.hi;
        } else if (bh <= 0) {
            r.lo = a.hi * b.lo;
            r.hi = a.lo * b.hi;
        } else {
            r.lo = a.hi * b.lo;
            r.hi = a.hi * b.hi;
        }
    } else if (ah <= 0) {
        if (bl >= 0) {
            r.lo = a.lo * b.hi;
            r.hi = a.hi * b.lo;
        } else if (bh <= 0) {
            r.lo = a.hi * b.hi;
            r.hi = a.lo * b.lo;
        } else {
            r.lo = a.lo * b.hi;
            r.hi = a.lo * b.lo;
        }
    } else {
        if (bl >= 0) {
            r.lo = a.lo * b.hi;
            r.hi = a.hi * b.hi;
        } else if (bh <= 0) {
            r.lo = a.hi * b.lo;
            r.hi = a.lo * b.lo;
        } else {
            r.lo = min(a.lo * b.hi, a.hi * b.lo);
            r.hi = max(a.lo * b.lo, a.hi * b.hi);
        }
    }
    return r;
}

Interval hull(const Interval& a, const Interval& b)
{
    Interval r;
    r.lo = min(a.lo, b.lo);
    r.hi = max(a.hi, b.hi);
    return r;
}

Interval intersect(const Interval& a, const Interval& b)
{
    return Interval(max(a.lo, b.lo), min(a.hi, b.hi));
}

Interval abs(const Interval& a)
{
    if (a.lo.sign() >= 0)
        return a;
    if (a.hi.sign() <= 0)
        return -a;
    Interval r;
    r.lo = Dyadic();
    r.hi = a.mag();
    return r;
}

Interval sqr(const Interval& a)
{
    const Interval m = abs(a);
    Interval r;
    r.lo = m.lo * m.lo;
    r.hi = m.hi * m.hi;
    return r;
}

Interval pow(const Interval& a, unsigned n)
{
    if (n == 0)
        return Interval(1);
    if (n % 2 == 0)
        return sqr(pow(a, n / 2));
    // odd powers are monotone
    auto ipow = [n](const Dyadic& x) {
        Dyadic r(1);
        for (unsigned i = 0; i < n; ++i)
            r *= x;
        return r;
    };
    Interval r;
    r.lo = ipow(a.lo);
    r.hi = ipow(a.hi);
    return r;
}

Interval div(const Interval& a, const Interval& b, std::int64_t p)
{
    if (b.contains_zero())
        throw Error(ErrorKind::invalid_argument, "interval division by an interval containing zero");
    // 1/b is monotone; a * [1/b.hi, 1/b.lo] with directed rounding per endpoint.
    const Dyadic* cands_num[4] = {&a.lo, &a.lo, &a.hi, &a.hi};
    const Dyadic* cands_den[4] = {&b.lo, &b.hi, &b.lo, &b.hi};
    Interval r;
    for (int i = 0; i < 4; ++i) {
        Dyadic down = Dyadic::div_down(*cands_num[i], *cands_den[i], p);
        Dyadic up = Dyadic::div_up(*cands_num[i], *cands_den[i], p);
        if (i == 0) {
            r.lo = std::move(down);
            r.hi = std::move(up);
        } else {
            r.lo = min(r.lo, down);
            r.hi = max(r.hi, up);
        }
    }
    return r;
}

Interval sqrt(const Interval& a, std::int64_t p)
{
    if (a.lo.sign() < 0)
        throw Error(ErrorKind::invalid_argument, "square root of an interval with negative part");
    Interval r;
    r.lo = Dyadic::sqrt_down(a.lo, p);
    r.hi = Dyadic::sqrt_up(a.hi, p);
    return r;
}

Dyadic ComplexInterval::mag_upper(std::int64_t p) const
{
    const Dyadic a = re.mag(), b = im.mag();
    return Dyadic::sqrt_up(a * a + b * b, p);
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) { return {a.re + b.re, a.im + b.im}; }
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) { return {a.re - b.re, a.im - b.im}; }
ComplexInterval operator-(const ComplexInterval& a) { return {-a.re, -a.im}; }

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator*(const ComplexInterval& a, const Interval& b) { return {a.re * b, a.im * b}; }

ComplexInterval div(const ComplexInterval& z, const Interval& b, std::int64_t p)
{
    return {div(z.re, b, p), div(z.im, b, p)};
}

} // namespace effdist
