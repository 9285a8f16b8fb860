#include "effdist/dml.hpp"

#include "effdist/elementary.hpp"
#include "effdist/error.hpp"

#include "util.hpp"

#include <string>

namespace effdist {

using detail::bits_of;
using detail::int_bits;
using detail::refine_to;

BernoulliParams::BernoulliParams(Real p) : p_(std::move(p))
{
    for (int k = 4; k <= 256; k += 12) {
        const Interval P = p_.at(k);
        if (P.lo.sign() > 0 && P.hi < Dyadic(1))
            return;
        if (P.hi.sign() <= 0 || Dyadic(1) <= P.lo)
            break;
    }
    throw Error(ErrorKind::invalid_argument, "cannot certify 0 < p < 1");
}

namespace {

ComplexInterval power(ComplexInterval z, std::uint64_t m, std::int64_t p)
{
    ComplexInterval r(Interval(1), Interval(0));
    while (m) {
        if (m & 1)
            r = (r * z).round_out(p);
        m >>= 1;
        if (m)
            z = (z * z).round_out(p);
    }
    return r;
}

Interval nat(std::uint64_t m) { return Interval(Dyadic(mpz_class(static_cast<unsigned long>(m)), 0)); }

} // namespace

ComplexInterval std_binomial_char(const BernoulliParams& params, std::uint64_t m, const Dyadic& t, std::int64_t k)
{
    if (m == 0)
        throw Error(ErrorKind::invalid_argument, "std_binomial_char needs m >= 1");
    const std::int64_t mb = bits_of(m) + 2;
    return refine_to(k, k + 2 * mb + 8, [&](std::int64_t q) {
        const std::int64_t w = q + 2 * mb + 8;
        const Interval P = params.p_at(w);
        const Interval Q = Interval(1) - P;
        const Interval M = nat(m);
        const Interval a = sqrt(div(Q, M * P, w), w);
        const Interval b = sqrt(div(P, M * Q, w), w);
        const Interval T(t);
        const ComplexInterval base = cis(a * T, w) * P + cis(-(b * T), w) * Q;
        return power(base.round_out(w), m, w);
    });
}

CharOracle char_binomial_std(const BernoulliParams& params, std::uint64_t m)
{
    return CharOracle([params, m](const Dyadic& t, std::int64_t k) { return std_binomial_char(params, m, t, k); },
                      [](std::int64_t k) { return lipschitz_modulus(Dyadic(1), k); },
                      "binomial_std(" + std::to_string(m) + ")");
}

Interval remainder_bound(unsigned n, const Interval& t)
{
    if (n == 0)
        throw Error(ErrorKind::invalid_argument, "remainder_bound needs n >= 1");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    const Dyadic fact(f, 0);
    const Dyadic lo = pow(Interval(t.mig()), n).lo, hi = pow(Interval(t.mag()), n).hi;
    const std::int64_t p = 64 + int_bits(hi);
    return Interval(Dyadic::div_down(lo, fact, p), Dyadic::div_up(hi, fact, p));
}

DmlBound dml_error_bound(const BernoulliParams& params, const Dyadic& K, std::uint64_t m, std::int64_t k)
{
    if (m == 0)
        throw Error(ErrorKind::invalid_argument, "dml_error_bound needs m >= 1");
    if (K.sign() < 0)
        throw Error(ErrorKind::invalid_argument, "dml_error_bound needs K >= 0");
    const std::int64_t p = std::max<std::int64_t>(k, 0) + 40 + bits_of(m);
    const Interval P = params.p_at(p + 8), Q = Interval(1) - P, M = nat(m);
    const Interval K2 = Interval(K * K), K3 = Interval(K * K * K);
    // x^{3/2} as sqrt(x^3)
    auto three_halves = [&](const Interval& x) { return sqrt(pow(x, 3), p + 4); };

    DmlBound b;
    b.K = K;
    b.m = m;
    const Interval qp = div(Q, P, p + 4), pq = div(P, Q, p + 4);
    b.main_term = div(K3 * (three_halves(qp) + three_halves(pq)), sqrt(M, p + 4), p + 2).round_out(p);
    b.bracket = (div(K2, M.mul_pow2(1), p + 4) + K3 * three_halves(div(Q, M * P, p + 4)) +
                 K3 * three_halves(div(P, M * Q, p + 4)))
                    .round_out(p);
    b.square_term = (M * sqr(b.bracket)).round_out(p);
    b.total = b.main_term + b.square_term;
    b.valid = b.bracket.hi < Dyadic::pow2(-1);
    return b;
}

std::uint64_t dml_modulus(const BernoulliParams& params, const Dyadic& K, std::int64_t k)
{
    if (K.sign() <= 0)
        throw Error(ErrorKind::invalid_argument, "dml_modulus needs K > 0");
    const Dyadic target = Dyadic::pow2(-k);
    for (int e = 0; e <= 62; ++e) {
        const std::uint64_t m = std::uint64_t{1} << e;
        const DmlBound b = dml_error_bound(params, K, m, k);
        if (b.valid && b.total.hi < target)
            return m;
    }
    throw Error(ErrorKind::budget_exhausted, "no m up to 2^62 meets 2^-" + std::to_string(k));
}

Interval gaussian_char(const Dyadic& t, std::int64_t k)
{
    return refine_to(k, k + 2, [&](std::int64_t p) { return exp_neg_sq_half(Interval(t), p + 1).round_out(p + 1); });
}

std::optional<ComplexInterval> principal_log(const ComplexInterval& z, std::int64_t p)
{
    if (!z.re.positive())
        return std::nullopt;
    const Interval mod2 = sqr(z.re) + sqr(z.im);
    const Interval re = log(mod2, p + 2).mul_pow2(-1);
    const Interval im = atan(div(z.im, z.re, p + 4 + int_bits(div(Interval(1), z.re, 8).hi)), p + 2);
    return ComplexInterval(re, im);
}

} // namespace effdist
