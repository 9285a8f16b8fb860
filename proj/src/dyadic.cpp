#include "effdist/dyadic.hpp"

#include "effdist/error.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace effdist {

void Dyadic::normalize()
{
    if (mant_ == 0) {
        exp_ = 0;
        return;
    }
    const auto tz = mpz_scan1(mant_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
        exp_ += static_cast<std::int64_t>(tz);
    }
}

std::int64_t Dyadic::ilog2() const
{
    return static_cast<std::int64_t>(mpz_sizeinbase(mant_.get_mpz_t(), 2)) - 1 + exp_;
}

namespace {

// Mantissa of x rescaled to exponent e <= x.exponent().
mpz_class aligned(const Dyadic& x, std::int64_t e)
{
    mpz_class m = x.mantissa();
    const auto shift = x.exponent() - e;
    if (shift > 0)
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    return m;
}

} // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b)
{
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    const auto e = std::min(a.exp_, b.exp_);
    return Dyadic(aligned(a, e) + aligned(b, e), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b)
{
    if (b.is_zero())
        return a;
    if (a.is_zero())
        return -b;
    const auto e = std::min(a.exp_, b.exp_);
    return Dyadic(aligned(a, e) - aligned(b, e), e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b)
{
    if (a.is_zero() || b.is_zero())
        return Dyadic();
    // Product of odd mantissas is odd: already canonical.
    return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_, Dyadic::raw_tag{});
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b)
{
    const int sa = a.sign(), sb = b.sign();
    if (sa != sb)
        return sa <=> sb;
    if (sa == 0)
        return std::strong_ordering::equal;
    // Same sign: compare magnitudes via bit lengths first.
    const auto la = a.ilog2(), lb = b.ilog2();
    if (la != lb)
        return sa > 0 ? la <=> lb : lb <=> la;
    const auto e = std::min(a.exp_, b.exp_);
    const int c = cmp(aligned(a, e), aligned(b, e));
    return c <=> 0;
}

Dyadic Dyadic::floor_at(std::int64_t p) const
{
    if (exp_ >= -p)
        return *this;
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(-p - exp_));
    return Dyadic(std::move(q), -p);
}

Dyadic Dyadic::ceil_at(std::int64_t p) const
{
    if (exp_ >= -p)
        return *this;
    mpz_class q;
    mpz_cdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(-p - exp_));
    return Dyadic(std::move(q), -p);
}

mpz_class Dyadic::floor_int() const
{
    const Dyadic f = floor_at(0);
    mpz_class m = f.mant_;
    if (f.exp_ > 0)
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(f.exp_));
    return m;
}

mpz_class Dyadic::ceil_int() const
{
    const Dyadic f = ceil_at(0);
    mpz_class m = f.mant_;
    if (f.exp_ > 0)
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(f.exp_));
    return m;
}

namespace {

// Numerator/denominator of a/b * 2^p as integers with positive denominator.
void scaled_ratio(const Dyadic& a, const Dyadic& b, std::int64_t p, mpz_class& num, mpz_class& den)
{
    if (b.is_zero())
        throw Error(ErrorKind::invalid_argument, "division by zero");
    num = a.mantissa();
    den = b.mantissa();
    const auto s = a.exponent() - b.exponent() + p;
    if (s >= 0)
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
    else
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-s));
    if (den < 0) {
        num = -num;
        den = -den;
    }
}

// a * 2^(2p) split into an integer part and a flag for an exact integer.
mpz_class scaled_radicand(const Dyadic& a, std::int64_t p, bool& exact)
{
    if (a.sign() < 0)
        throw Error(ErrorKind::invalid_argument, "square root of a negative number");
    const auto e = a.exponent() + 2 * p;
    mpz_class n = a.mantissa();
    if (e >= 0) {
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        exact = true;
    } else {
        mpz_fdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        exact = a.is_zero();
    }
    return n;
}

} // namespace

Dyadic Dyadic::div_down(const Dyadic& a, const Dyadic& b, std::int64_t p)
{
    mpz_class num, den, q;
    scaled_ratio(a, b, p, num, den);
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Dyadic(std::move(q), -p);
}

Dyadic Dyadic::div_up(const Dyadic& a, const Dyadic& b, std::int64_t p)
{
    mpz_class num, den, q;
    scaled_ratio(a, b, p, num, den);
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Dyadic(std::move(q), -p);
}

Dyadic Dyadic::sqrt_down(const Dyadic& a, std::int64_t p)
{
    bool exact = false;
    mpz_class n = scaled_radicand(a, p, exact);
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return Dyadic(std::move(r), -p);
}

Dyadic Dyadic::sqrt_up(const Dyadic& a, std::int64_t p)
{
    bool exact = false;
    mpz_class n = scaled_radicand(a, p, exact);
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (!exact || r * r != n)
        r += 1;
    return Dyadic(std::move(r), -p);
}

double Dyadic::to_double() const
{
    long e = 0;
    const double d = mpz_get_d_2exp(&e, mant_.get_mpz_t());
    return std::ldexp(d, static_cast<int>(e + exp_));
}

std::string Dyadic::str() const
{
    if (exp_ >= 0) {
        mpz_class m = mant_;
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
        return m.get_str();
    }
    return mant_.get_str() + "/2^" + std::to_string(-exp_);
}

std::string Dyadic::decimal(int digits, bool round_up) const
{
    // floor or ceil of x * 10^digits, then place the decimal point.
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class num = mant_ * scale;
    mpz_class q;
    if (exp_ >= 0) {
        mpz_mul_2exp(q.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
    } else if (round_up) {
        mpz_cdiv_q_2exp(q.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
    } else {
        mpz_fdiv_q_2exp(q.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
    }
    const bool neg = q < 0;
    std::string s = mpz_class(::abs(q)).get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits)
            s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return neg ? "-" + s : s;
}

namespace {

mpz_class parse_integer(std::string_view t, std::string_view whole)
{
    std::string s(t);
    if (s.empty() || !(std::isdigit(static_cast<unsigned char>(s.back()))))
        throw Error(ErrorKind::parse_error, "not a dyadic number: '" + std::string(whole) + "'");
    mpz_class v;
    if (v.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
        throw Error(ErrorKind::parse_error, "not a dyadic number: '" + std::string(whole) + "'");
    return v;
}

} // namespace

Dyadic Dyadic::parse(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    const auto fail = [&] { return Error(ErrorKind::parse_error, "not a dyadic number: '" + std::string(text) + "'"); };

    const auto op = text.find_first_of("/*");
    if (op == std::string_view::npos)
        return Dyadic(parse_integer(text, text), 0);

    const mpz_class m = parse_integer(text.substr(0, op), text);
    const auto rest = text.substr(op + 1);
    const bool divide = text[op] == '/';
    std::int64_t e = 0;
    if (rest.rfind("2^", 0) == 0) {
        const mpz_class ev = parse_integer(rest.substr(2), text);
        if (!ev.fits_slong_p())
            throw fail();
        e = ev.get_si();
    } else {
        const mpz_class d = parse_integer(rest, text);
        if (d <= 0 || mpz_popcount(d.get_mpz_t()) != 1)
            throw fail();
        e = static_cast<std::int64_t>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 1;
        if (!divide)
            throw fail();
    }
    return Dyadic(m, divide ? -e : e);
}

} // namespace effdist
