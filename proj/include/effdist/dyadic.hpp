#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace effdist {

/// Exact dyadic rational `mantissa * 2^exponent`.
///
/// Kept canonical: the mantissa is odd, or zero with exponent 0, so equal
/// values are bitwise equal. All ring operations are exact; rounding only
/// happens through the explicit floor/ceil helpers.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long v) : mant_(v) { normalize(); } // NOLINT(google-explicit-constructor)
    Dyadic(int v) : mant_(v) { normalize(); }  // NOLINT(google-explicit-constructor)
    Dyadic(mpz_class mant, std::int64_t exp) : mant_(std::move(mant)), exp_(exp) { normalize(); }

    static Dyadic pow2(std::int64_t e) { return Dyadic(mpz_class(1), e); }

    /// Parses "m", "m/2^e", "m*2^e" or "m/d" with d a power of two.
    static Dyadic parse(std::string_view text);

    const mpz_class& mantissa() const { return mant_; }
    std::int64_t exponent() const { return exp_; }

    int sign() const { return sgn(mant_); }
    bool is_zero() const { return mant_ == 0; }
    bool is_integer() const { return exp_ >= 0; }

    /// floor(log2 |x|); undefined for zero.
    std::int64_t ilog2() const;

    Dyadic operator-() const { return Dyadic(-mant_, exp_, raw_tag{}); }
    Dyadic abs() const { return Dyadic(::abs(mant_), exp_, raw_tag{}); }
    Dyadic mul_pow2(std::int64_t e) const { return is_zero() ? *this : Dyadic(mant_, exp_ + e, raw_tag{}); }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.exp_ == b.exp_ && a.mant_ == b.mant_; }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

    /// Largest multiple of 2^-p not above x.
    Dyadic floor_at(std::int64_t p) const;
    /// Smallest multiple of 2^-p not below x.
    Dyadic ceil_at(std::int64_t p) const;
    mpz_class floor_int() const;
    mpz_class ceil_int() const;

    /// Quotients rounded to multiples of 2^-p; b must be nonzero.
    static Dyadic div_down(const Dyadic& a, const Dyadic& b, std::int64_t p);
    static Dyadic div_up(const Dyadic& a, const Dyadic& b, std::int64_t p);
    /// Square roots rounded to multiples of 2^-p; a must be nonnegative.
    static Dyadic sqrt_down(const Dyadic& a, std::int64_t p);
    static Dyadic sqrt_up(const Dyadic& a, std::int64_t p);

    double to_double() const;
    /// "m" for integers, "m/2^e" otherwise; accepted back by parse().
    std::string str() const;
    /// Fixed-point decimal with `digits` fractional digits, rounded down or up.
    std::string decimal(int digits, bool round_up) const;

private:
    struct raw_tag {};
    Dyadic(mpz_class mant, std::int64_t exp, raw_tag) : mant_(std::move(mant)), exp_(exp) {}
    void normalize();

    mpz_class mant_{0};
    std::int64_t exp_ = 0;
};

inline Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

} // namespace effdist
