#pragma once

#include "effdist/dyadic.hpp"

#include <cstdint>
#include <string>

namespace effdist {

/// Closed interval with dyadic endpoints, lo <= hi.
///
/// Ring operations are exact (no rounding). `round_out` is the only place
/// where endpoints are shortened, and it always widens.
struct Interval {
    Dyadic lo;
    Dyadic hi;

    Interval() = default;
    Interval(const Dyadic& point) : lo(point), hi(point) {} // NOLINT(google-explicit-constructor)
    Interval(int point) : lo(point), hi(point) {}           // NOLINT(google-explicit-constructor)
    Interval(Dyadic l, Dyadic h);

    /// [c - r, c + r]
    static Interval around(const Dyadic& c, const Dyadic& r) { return Interval(c - r, c + r); }

    Dyadic width() const { return hi - lo; }
    Dyadic mid() const { return (lo + hi).mul_pow2(-1); }
    Dyadic rad() const { return width().mul_pow2(-1); }
    /// max |x| over the interval
    Dyadic mag() const { return max(lo.abs(), hi.abs()); }
    /// min |x| over the interval
    Dyadic mig() const;
    bool is_point() const { return lo == hi; }

    bool contains(const Dyadic& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool positive() const { return lo.sign() > 0; }
    bool negative() const { return hi.sign() < 0; }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }

    /// Endpoints rounded outward to multiples of 2^-p.
    Interval round_out(std::int64_t p) const { return {lo.floor_at(p), hi.ceil_at(p)}; }
    Interval widen(const Dyadic& r) const { return {lo - r, hi + r}; }
    Interval mul_pow2(std::int64_t e) const { return {lo.mul_pow2(e), hi.mul_pow2(e)}; }

    std::string str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

Interval hull(const Interval& a, const Interval& b);
/// Intersection; the operands must intersect.
Interval intersect(const Interval& a, const Interval& b);
Interval abs(const Interval& a);
Interval sqr(const Interval& a);
Interval pow(const Interval& a, unsigned n);
/// Quotient rounded outward at 2^-p; b must exclude zero.
Interval div(const Interval& a, const Interval& b, std::int64_t p);
/// Square root rounded outward at 2^-p; a must be nonnegative.
Interval sqrt(const Interval& a, std::int64_t p);

/// Complex interval as a rectangle re x im.
struct ComplexInterval {
    Interval re;
    Interval im;

    ComplexInterval() = default;
    ComplexInterval(Interval r) : re(std::move(r)), im(0) {} // NOLINT(google-explicit-constructor)
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    /// Largest component width.
    Dyadic width() const { return max(re.width(), im.width()); }
    /// Upper bound of |z| over the rectangle, rounded up at 2^-p.
    Dyadic mag_upper(std::int64_t p) const;
    ComplexInterval conj() const { return {re, -im}; }
    ComplexInterval round_out(std::int64_t p) const { return {re.round_out(p), im.round_out(p)}; }
    /// Adds [-r, r] to both components.
    ComplexInterval widen(const Dyadic& r) const { return {re.widen(r), im.widen(r)}; }
    ComplexInterval mul_pow2(std::int64_t e) const { return {re.mul_pow2(e), im.mul_pow2(e)}; }
    bool intersects(const ComplexInterval& o) const { return re.intersects(o.re) && im.intersects(o.im); }
    bool contains(const ComplexInterval& o) const { return re.contains(o.re) && im.contains(o.im); }

    std::string str() const { return re.str() + " + i" + im.str(); }

    friend bool operator==(const ComplexInterval&, const ComplexInterval&) = default;
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const Interval& b);
inline ComplexInterval operator*(const Interval& a, const ComplexInterval& b) { return b * a; }
inline ComplexInterval& operator+=(ComplexInterval& a, const ComplexInterval& b) { return a = a + b; }
inline ComplexInterval& operator*=(ComplexInterval& a, const ComplexInterval& b) { return a = a * b; }
/// z * i
inline ComplexInterval times_i(const ComplexInterval& z) { return {-z.im, z.re}; }
/// Outward-rounded z / b for a real interval b excluding zero.
ComplexInterval div(const ComplexInterval& z, const Interval& b, std::int64_t p);

} // namespace effdist
