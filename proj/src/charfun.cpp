#include "effdist/charfun.hpp"

#include "effdist/elementary.hpp"
#include "effdist/error.hpp"
#include "effdist/limits.hpp"

#include "util.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace effdist {

using detail::bits_of;
using detail::int_bits;
using detail::refine_to;

ComplexInterval CharOracle::eval(const Interval& t, std::int64_t k) const
{
    if (t.is_point())
        return eval(t.lo, k);
    if (ieval_)
        return ieval_(t, k);
    const Dyadic r = t.rad();
    const ComplexInterval c = eval(t.mid(), k);
    for (std::int64_t j = k; j >= 0; --j)
        if (r < Dyadic::pow2(-modulus(j)))
            return c.widen(Dyadic::pow2(-j));
    return c.widen(Dyadic(2));
}

ComplexInterval CharOracle::eval(const Real& t, std::int64_t k) const
{
    const Interval T = t.at(static_cast<int>(modulus(k + 2) + 1));
    return eval(T.mid(), k + 2).widen(Dyadic::pow2(-(k + 2)));
}

namespace {

// L(k) for one distribution, computed once per k
class TightnessCache {
public:
    explicit TightnessCache(DistOracle mu) : mu_(std::move(mu)) {}
    std::int64_t operator()(std::int64_t k)
    {
        {
            std::lock_guard<std::mutex> lock(m_);
            if (auto it = cache_.find(k); it != cache_.end())
                return it->second;
        }
        const std::int64_t L = tightness(mu_, k);
        std::lock_guard<std::mutex> lock(m_);
        cache_.emplace(k, L);
        return L;
    }
    const DistOracle& mu() const { return mu_; }

private:
    DistOracle mu_;
    std::mutex m_;
    std::map<std::int64_t, std::int64_t> cache_;
};

// smallest beta with 2^-beta < 1 / ((L + 1) 2^(k+2))
std::int64_t tight_modulus(std::int64_t L, std::int64_t k)
{
    return k + 2 + bits_of(static_cast<std::uint64_t>(L + 1));
}

} // namespace

CharOracle char_from_dist(const DistOracle& mu)
{
    auto cache = std::make_shared<TightnessCache>(mu);
    auto eval = [cache](const Dyadic& t, std::int64_t k) {
        const std::int64_t L = (*cache)(k + 2);
        const ComplexInterval core = cache->mu().windowed_eval(make_w(static_cast<unsigned>(L)), Interval(t), k + 2);
        return core.widen(Dyadic::pow2(-(k + 2)));
    };
    auto modulus = [cache](std::int64_t k) { return tight_modulus((*cache)(k + 2), k); };
    // over an interval the window term moves by at most rad(t) (L + 1)
    auto ieval = [cache](const Interval& t, std::int64_t k) {
        const std::int64_t L = (*cache)(k + 2);
        return cache->mu().windowed_eval(make_w(static_cast<unsigned>(L)), t, k + 2).widen(Dyadic::pow2(-(k + 2)));
    };
    return CharOracle(eval, modulus, "char_from_dist(" + mu.info().label + ")").with_interval_eval(ieval);
}

std::int64_t lipschitz_modulus(const Dyadic& lip, std::int64_t k)
{
    if (lip.is_zero())
        return 0;
    return std::max<std::int64_t>(0, k + lip.ilog2() + 1);
}

CharOracle char_constant_one()
{
    return CharOracle([](const Dyadic&, std::int64_t) { return ComplexInterval(Interval(1), Interval(0)); },
                      [](std::int64_t) { return std::int64_t{0}; }, "constant_one")
        .with_deriv([](const Interval&, std::int64_t) { return ComplexInterval(Interval(0), Interval(0)); });
}

CharOracle char_sinc_uniform(const Dyadic& a)
{
    if (a.sign() <= 0)
        throw Error(ErrorKind::invalid_argument, "sinc_uniform needs a > 0");
    // sup |sinc'| < 1/2
    const Dyadic lip = a.mul_pow2(-1);
    return CharOracle(
        [a](const Dyadic& t, std::int64_t k) {
            return refine_to(k, k + 2, [&](std::int64_t p) {
                return ComplexInterval(sinc(Interval(a * t), p + 1).round_out(p + 1), Interval(0));
            });
        },
        [lip](std::int64_t k) { return lipschitz_modulus(lip, k); }, "sinc_uniform(" + a.str() + ")")
        .with_interval_eval([a](const Interval& t, std::int64_t k) {
            return ComplexInterval(sinc(Interval(a) * t, k + 2).round_out(k + 2), Interval(0));
        })
        .with_deriv([a](const Interval& t, std::int64_t p) {
            return ComplexInterval((Interval(a) * sinc_deriv(Interval(a) * t, p + int_bits(a))).round_out(p + 2), Interval(0));
        });
}

CharOracle char_gaussian()
{
    return CharOracle(
        [](const Dyadic& t, std::int64_t k) {
            return refine_to(k, k + 2, [&](std::int64_t p) {
                return ComplexInterval(exp_neg_sq_half(Interval(t), p + 1).round_out(p + 1), Interval(0));
            });
        },
        [](std::int64_t k) { return lipschitz_modulus(Dyadic(1), k); }, "gaussian")
        .with_interval_eval([](const Interval& t, std::int64_t k) {
            return ComplexInterval(exp_neg_sq_half(t, k + 2).round_out(k + 2), Interval(0));
        })
        .with_deriv([](const Interval& t, std::int64_t p) {
            return ComplexInterval((-t * exp_neg_sq_half(t, p + 2 + int_bits(t.mag()))).round_out(p + 2), Interval(0));
        });
}

CharOracle char_cos()
{
    return CharOracle(
        [](const Dyadic& t, std::int64_t k) {
            return refine_to(k, k + 2, [&](std::int64_t p) {
                return ComplexInterval(cos(Interval(t), p + 1).round_out(p + 1), Interval(0));
            });
        },
        [](std::int64_t k) { return lipschitz_modulus(Dyadic(1), k); }, "cos")
        .with_interval_eval([](const Interval& t, std::int64_t k) {
            return ComplexInterval(cos(t, k + 2).round_out(k + 2), Interval(0));
        })
        .with_deriv([](const Interval& t, std::int64_t p) { return ComplexInterval(-sin(t, p + 2), Interval(0)); });
}

namespace {

ComplexInterval power(ComplexInterval z, unsigned m, std::int64_t p)
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

} // namespace

CharOracle char_binomial(unsigned m, const Real& p)
{
    const Interval P0 = p.at(60);
    if (P0.hi.sign() < 0 || Dyadic(1) < P0.lo)
        throw Error(ErrorKind::invalid_weights, "binomial p outside [0, 1]: " + P0.str());
    const std::int64_t mb = bits_of(m) + 2;
    return CharOracle(
        [m, p, mb](const Dyadic& t, std::int64_t k) {
            return refine_to(k, k + 2 * mb + 4, [&](std::int64_t q) {
                const Interval P = p.at(static_cast<int>(q + mb));
                const ComplexInterval base = cis(Interval(t), q + 2 * mb) * P + ComplexInterval(Interval(1) - P, Interval(0));
                return power(base, m, q + 2 * mb);
            });
        },
        [m](std::int64_t k) { return lipschitz_modulus(Dyadic(static_cast<long>(m)), k); },
        "binomial(" + std::to_string(m) + ")")
        .with_deriv([m, p, mb](const Interval& t, std::int64_t q) {
            // m (p e^{it} + q)^{m-1} i p e^{it}
            if (m == 0)
                return ComplexInterval(Interval(0), Interval(0));
            const std::int64_t w = q + 2 * mb + 4;
            const Interval P = p.at(static_cast<int>(w));
            const ComplexInterval e = cis(t, w);
            const ComplexInterval base = e * P + ComplexInterval(Interval(1) - P, Interval(0));
            return (power(base, m - 1, w) * times_i(e * P) * Interval(Dyadic(static_cast<long>(m)))).round_out(q + 2);
        });
}

std::int64_t equicont_modulus(const DistConvergence& cert, std::int64_t k)
{
    return tight_modulus(seq_tightness(cert, k + 2), k);
}

std::uint64_t levy_grid_size(std::int64_t M, std::int64_t beta)
{
    if (beta >= 62 || M >= (std::int64_t{1} << (62 - beta)))
        return UINT64_MAX;
    return static_cast<std::uint64_t>(2 * M) * (std::uint64_t{1} << beta) + 1;
}

std::int64_t levy_transfer(const DistConvergence& cert,
                           const std::function<std::int64_t(const Dyadic& t, std::int64_t k)>& exp_modulus,
                           std::int64_t M, std::int64_t k)
{
    if (M < 0)
        throw Error(ErrorKind::invalid_argument, "levy_transfer needs M >= 0");
    const std::int64_t beta = equicont_modulus(cert, k);
    const std::uint64_t n = levy_grid_size(M, beta);
    if (n > default_limits().max_grid)
        throw Error(ErrorKind::grid_budget_exceeded,
                    "Levy grid needs " + (n == UINT64_MAX ? std::string("too many") : std::to_string(n)) + " points");
    std::int64_t eta = 0;
    const Dyadic step = Dyadic::pow2(-beta);
    for (std::uint64_t j = 0; j < n; ++j) {
        const Dyadic t = Dyadic(-M) + step * Dyadic(mpz_class(static_cast<unsigned long>(j)), 0);
        eta = std::max(eta, exp_modulus(t, beta));
    }
    return eta;
}

} // namespace effdist
