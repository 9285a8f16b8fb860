#include "effdist/real.hpp"

#include "effdist/elementary.hpp"
#include "effdist/error.hpp"

#include <string>

namespace effdist {

Real Real::exact(const Dyadic& d)
{
    return Real([d](int) { return Interval(d); });
}

Real Real::ratio(const mpz_class& num, const mpz_class& den)
{
    if (den == 0)
        throw Error(ErrorKind::invalid_argument, "zero denominator");
    const Dyadic n(num, 0), d(den, 0);
    return Real([n, d](int k) {
        return Interval(Dyadic::div_down(n, d, k + 1), Dyadic::div_up(n, d, k + 1));
    });
}

Real Real::sqrt_of(const Dyadic& a)
{
    if (a.sign() < 0)
        throw Error(ErrorKind::invalid_argument, "square root of a negative number");
    return Real([a](int k) {
        // bisection on [0, max(1, a)] keeping lo^2 <= a <= hi^2
        Dyadic lo, hi = max(Dyadic(1), a);
        const Dyadic target = Dyadic::pow2(-k);
        while (hi - lo > target) {
            const Dyadic m = (lo + hi).mul_pow2(-1);
            if (m * m <= a)
                lo = m;
            else
                hi = m;
        }
        return Interval(lo, hi);
    });
}

Real Real::pi()
{
    return Real([](int k) { return effdist::pi(k); });
}

Real Real::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash != std::string_view::npos && text.find("2^") == std::string_view::npos) {
        mpz_class num, den;
        const std::string a(text.substr(0, slash)), b(text.substr(slash + 1));
        if (num.set_str(a, 10) != 0 || den.set_str(b, 10) != 0 || den == 0)
            throw Error(ErrorKind::parse_error, "not a rational number: '" + std::string(text) + "'");
        if (mpz_popcount(mpz_class(::abs(den)).get_mpz_t()) != 1)
            return ratio(num, den);
    }
    return exact(Dyadic::parse(text));
}

Interval Real::at(int k) const
{
    Interval r = eval_(k);
    if (r.width() > Dyadic::pow2(-k))
        throw Error(ErrorKind::invalid_argument,
                    "real oracle returned width above 2^-" + std::to_string(k) + ": " + r.str());
    return r;
}

Real Real::operator-() const
{
    return Real([f = eval_](int k) { return -f(k); });
}

Real operator+(const Real& a, const Real& b)
{
    return Real([fa = a.eval_, fb = b.eval_](int k) { return fa(k + 1) + fb(k + 1); });
}

} // namespace effdist
