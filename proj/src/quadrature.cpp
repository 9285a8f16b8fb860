#include "effdist/quadrature.hpp"

#include "effdist/elementary.hpp"
#include "effdist/error.hpp"
#include "effdist/limits.hpp"

#include "util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <queue>
#include <string>
#include <vector>

namespace effdist {

using detail::int_bits;

Envelope Envelope::make_gaussian(const Dyadic& sigma2, const Dyadic& scale)
{
    if (sigma2.sign() <= 0 || scale.sign() < 0)
        throw Error(ErrorKind::invalid_argument, "gaussian envelope needs sigma2 > 0 and scale >= 0");
    Envelope e;
    e.gaussian = Gaussian{sigma2, scale};
    return e;
}

Envelope Envelope::make_compact(const Dyadic& bound, const Dyadic& radius)
{
    if (bound.sign() < 0 || radius.sign() < 0)
        throw Error(ErrorKind::invalid_argument, "compact envelope needs nonnegative bound and radius");
    Envelope e;
    e.compact = Compact{bound, radius};
    return e;
}

Envelope Envelope::make_inverse_square(const Dyadic& coeff, const Dyadic& from)
{
    if (coeff.sign() < 0 || from.sign() <= 0)
        throw Error(ErrorKind::invalid_argument, "inverse-square envelope needs coeff >= 0 and from > 0");
    Envelope e;
    e.inverse_square = InverseSquare{coeff, from};
    return e;
}

namespace {

// scale * sqrt(2 pi sigma2) * exp(-m^2 / (2 sigma2)), upper bound
Dyadic gaussian_tail(const Envelope::Gaussian& g, std::int64_t m, std::int64_t p)
{
    if (g.scale.is_zero())
        return Dyadic();
    const std::int64_t pp = p + 8 + int_bits(g.scale) + int_bits(g.sigma2);
    const Interval two_pi_s2 = (pi(pp) * Interval(g.sigma2)).mul_pow2(1);
    const Interval front = Interval(g.scale) * sqrt(two_pi_s2, pp);
    const Interval arg = -div(Interval(Dyadic(m) * Dyadic(m)), Interval(g.sigma2.mul_pow2(1)), pp);
    return (front * exp(arg, pp)).hi.ceil_at(p);
}

} // namespace

Dyadic Envelope::upper(const Interval& x, std::int64_t p) const
{
    std::optional<Dyadic> best;
    auto take = [&](const Dyadic& v) {
        if (!best || v < *best)
            best = v;
    };
    const Dyadic mig = x.mig();
    if (compact)
        take(mig > compact->radius ? Dyadic() : compact->bound);
    if (gaussian) {
        const Interval arg = -div(Interval(mig * mig), Interval(gaussian->sigma2.mul_pow2(1)), p + 4);
        take((Interval(gaussian->scale) * exp(arg, p + 4 + int_bits(gaussian->scale))).hi.ceil_at(p));
    }
    if (inverse_square && mig >= inverse_square->from)
        take(Dyadic::div_up(inverse_square->coeff, mig * mig, p));
    if (!best)
        throw Error(ErrorKind::unsupported_envelope, "no envelope component applies at " + x.str());
    return *best;
}

Dyadic Envelope::tail_upper(std::int64_t m, std::int64_t p) const
{
    std::optional<Dyadic> best;
    auto take = [&](const Dyadic& v) {
        if (!best || v < *best)
            best = v;
    };
    const Dyadic M(m);
    if (compact)
        take(M >= compact->radius ? Dyadic() : (compact->bound * (compact->radius - M)).mul_pow2(1));
    if (gaussian)
        take(gaussian_tail(*gaussian, m, p));
    if (inverse_square && M >= inverse_square->from)
        take(Dyadic::div_up(inverse_square->coeff.mul_pow2(1), M, p));
    if (!best)
        throw Error(ErrorKind::unsupported_envelope, "no envelope component bounds the tail");
    return *best;
}

std::int64_t tail_cutoff(const Integrand& f, std::int64_t k)
{
    if (!f.envelope || f.envelope->empty())
        throw Error(ErrorKind::unsupported_envelope, "tail cutoff needs an envelope");
    const Envelope& env = *f.envelope;
    const Dyadic target = Dyadic::pow2(-k);
    std::optional<std::int64_t> best;
    auto take = [&](std::int64_t m) {
        if (!best || m < *best)
            best = m;
    };
    if (env.compact)
        take(env.compact->bound.is_zero() ? 0 : static_cast<std::int64_t>(env.compact->radius.ceil_int().get_si()));
    if (env.inverse_square) {
        const auto& s = *env.inverse_square;
        if (s.coeff.is_zero()) {
            take(0);
        } else {
            // 2 coeff / m < 2^-k
            const mpz_class m = (s.coeff.mul_pow2(k + 1)).floor_int() + 1;
            const mpz_class from = s.from.ceil_int();
            take(std::max(m, from).get_si());
        }
    }
    if (env.gaussian) {
        const auto& g = *env.gaussian;
        if (g.scale.is_zero()) {
            take(0);
        } else {
            const std::int64_t p = k + 8;
            auto ok = [&](std::int64_t m) { return gaussian_tail(g, m, p) < target; };
            // start from the floating-point estimate, then settle on the certified minimum
            const double s2 = g.sigma2.to_double();
            const double lead = std::log(g.scale.to_double() * std::sqrt(2 * M_PI * s2)) + k * std::log(2.0);
            std::int64_t m = lead > 0 ? static_cast<std::int64_t>(std::sqrt(2 * s2 * lead)) : 0;
            m = std::max<std::int64_t>(0, m - 2);
            while (m > 0 && ok(m - 1))
                --m;
            while (!ok(m))
                ++m;
            take(m);
        }
    }
    return *best;
}

namespace {

struct Cell {
    Dyadic lo;
    Dyadic h;
    std::int64_t p;
    ComplexInterval val;
    double wre;
    double wim;
};

double dwidth(const Interval& v)
{
    const double w = v.width().to_double();
    return std::isfinite(w) ? w : HUGE_VAL;
}

} // namespace

ComplexInterval integrate_finite(const Integrand& f, const Dyadic& a, const Dyadic& b, std::int64_t k)
{
    if (b < a)
        throw Error(ErrorKind::invalid_argument, "integration bounds out of order");
    if (a == b)
        return ComplexInterval(Interval(0), Interval(0));
    const Dyadic len = b - a;
    const std::uint64_t max_cells = default_limits().max_cells;
    const std::int64_t p0 = k + int_bits(len) + 6;

    // first partition: a power of two driven by the Lipschitz data when available
    std::int64_t level = 4;
    if (f.lip_on) {
        const Dyadic lip = f.lip_on(a, b);
        // lip * len^2 / N <= 2^-(k+2)
        const Dyadic need = lip * len * len;
        if (!need.is_zero())
            level = std::clamp<std::int64_t>(need.ilog2() + 1 + k + 2, 4, 12);
    }
    const std::int64_t n0 = std::int64_t{1} << level;
    const Dyadic h0 = len.mul_pow2(-level);

    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(n0) * 2);
    std::size_t made = 0;
    auto make = [&](const Dyadic& lo, const Dyadic& h, std::int64_t p) {
        ++made;
        ComplexInterval v;
        if (f.deriv) {
            const Dyadic mid = lo + h.mul_pow2(-1);
            const ComplexInterval d = f.deriv(Interval(lo, lo + h), p);
            const ComplexInterval fm = f.eval(Interval(mid), p);
            const Dyadic h8 = h.mul_pow2(-3);
            v = ComplexInterval(fm.re + Interval(-h8 * d.re.width(), h8 * d.re.width()),
                                fm.im + Interval(-h8 * d.im.width(), h8 * d.im.width()));
        } else {
            v = f.eval(Interval(lo, lo + h), p);
        }
        Cell c{lo, h, p, ComplexInterval(v.re * Interval(h), v.im * Interval(h)), 0, 0};
        c.wre = dwidth(c.val.re);
        c.wim = dwidth(c.val.im);
        return c;
    };
    for (std::int64_t i = 0; i < n0; ++i)
        cells.push_back(make(a + h0 * Dyadic(static_cast<long>(i)), h0, p0));

    using Entry = std::pair<double, std::size_t>;
    auto cmp = [&](const Entry& x, const Entry& y) {
        if (x.first != y.first)
            return x.first < y.first;
        return x.second > y.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    double sre = 0, sim = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        heap.push({cells[i].wre + cells[i].wim, i});
        sre += cells[i].wre;
        sim += cells[i].wim;
    }

    const Dyadic target = Dyadic::pow2(-k);
    double goal = std::ldexp(0.75, static_cast<int>(std::max<std::int64_t>(-k, -1070)));
    for (;;) {
        while (std::max(sre, sim) > goal && !heap.empty()) {
            if (cells.size() >= max_cells)
                throw Error(ErrorKind::precision_overflow,
                            "quadrature needs more than " + std::to_string(max_cells) + " cells");
            const std::size_t i = heap.top().second;
            heap.pop();
            Cell& c = cells[i];
            sre -= c.wre;
            sim -= c.wim;
            // A cell whose width is mostly rounding gains nothing from bisection.
            const Dyadic fw = max(c.val.re.width(), c.val.im.width());
            if (fw <= c.h.mul_pow2(-(c.p - 3))) {
                c = make(c.lo, c.h, c.p + 16);
                heap.push({c.wre + c.wim, i});
                sre += c.wre;
                sim += c.wim;
                continue;
            }
            const Dyadic half = c.h.mul_pow2(-1);
            Cell right = make(c.lo + half, half, c.p);
            c = make(c.lo, half, c.p);
            cells.push_back(std::move(right));
            for (std::size_t j : {i, cells.size() - 1}) {
                heap.push({cells[j].wre + cells[j].wim, j});
                sre += cells[j].wre;
                sim += cells[j].wim;
            }
        }
        std::vector<std::size_t> order(cells.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return cells[x].lo < cells[y].lo; });
        ComplexInterval sum(Interval(0), Interval(0));
        for (std::size_t i : order)
            sum += cells[i].val;
        if (sum.re.width() <= target && sum.im.width() <= target) {
            if (std::getenv("EFFDIST_TRACE")) {
                // cell count per binary decade of |x|, and the precision range
                std::map<std::int64_t, std::size_t> hist;
                std::int64_t pmax = 0;
                for (const auto& c : cells) {
                    const Dyadic m = max(c.lo.abs(), (c.lo + c.h).abs());
                    ++hist[m.is_zero() ? -99 : m.ilog2()];
                    pmax = std::max(pmax, c.p);
                }
                std::fprintf(stderr, "quad [%s, %s] k=%lld cells=%zu made=%zu pmax=%lld:", a.str().c_str(),
                             b.str().c_str(), static_cast<long long>(k), cells.size(), made,
                             static_cast<long long>(pmax));
                for (auto [e, c] : hist)
                    std::fprintf(stderr, " 2^%lld:%zu", static_cast<long long>(e), c);
                std::fprintf(stderr, "\n");
            }
            return sum;
        }
        // floating-point bookkeeping was too optimistic; resynchronise and tighten
        sre = sim = 0;
        for (const auto& c : cells) {
            sre += c.wre;
            sim += c.wim;
        }
        goal = std::min(goal, std::max(sre, sim)) / 2;
        if (heap.empty())
            throw Error(ErrorKind::precision_overflow, "quadrature cannot reach the requested width");
    }
}

ComplexInterval integrate_R(const Integrand& f, std::int64_t k)
{
    const std::int64_t m = tail_cutoff(f, k + 2);
    const Dyadic r(m + 1);
    const ComplexInterval core = integrate_finite(f, -r, r, k + 1);
    return core.widen(Dyadic::pow2(-(k + 2)));
}

Integrand real_integrand(std::function<Interval(const Interval& x, std::int64_t p)> g)
{
    Integrand f;
    f.eval = [g = std::move(g)](const Interval& x, std::int64_t p) { return ComplexInterval(g(x, p), Interval(0)); };
    return f;
}

Integrand real_integrand(std::function<Interval(const Interval& x, std::int64_t p)> g,
                         std::function<Interval(const Interval& x, std::int64_t p)> dg)
{
    Integrand f = real_integrand(std::move(g));
    f.deriv = [dg = std::move(dg)](const Interval& x, std::int64_t p) { return ComplexInterval(dg(x, p), Interval(0)); };
    return f;
}

} // namespace effdist
