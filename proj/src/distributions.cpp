#include "effdist/distributions.hpp"

#include "effdist/elementary.hpp"
#include "effdist/error.hpp"
#include "effdist/json_io.hpp"
#include "effdist/limits.hpp"

#include "util.hpp"

#include <algorithm>
#include <string>

namespace effdist {

using detail::int_bits;
using detail::refine_to;

ComplexInterval DistOracle::windowed_eval(const TestFunction& f, const Interval& t, std::int64_t k) const
{
    if (f.is_zero())
        return ComplexInterval(Interval(0), Interval(0));
    if (t.is_point())
        return window_(f, t.lo, k);
    // |d/dt mu(f e^{itx})| <= integral of |x f(x)| dmu <= L * M_f
    const Dyadic var = t.rad() * f.support_bound() * f.sup_norm();
    return window_(f, t.mid(), k).widen(var);
}

ComplexInterval DistOracle::windowed_eval(const TestFunction& f, const Real& t, std::int64_t k) const
{
    if (f.is_zero())
        return ComplexInterval(Interval(0), Interval(0));
    // a t-enclosure of radius 2^-(k+3+b) moves the value by at most 2^-(k+2)
    const Dyadic lm = f.support_bound() * f.sup_norm();
    const Interval T = t.at(static_cast<int>(k + 3 + int_bits(lm)));
    return window_(f, T.mid(), k + 1).widen(T.rad() * lm);
}

namespace {

// f(x) e^{itx} for x given by an enclosure
ComplexInterval windowed_point(const TestFunction& f, const Interval& x, const Dyadic& t, std::int64_t p)
{
    const Interval v = f.pl().eval(x, p + 2);
    if (v == Interval(0))
        return ComplexInterval(Interval(0), Interval(0));
    return cis(Interval(t) * x, p + 2) * v;
}

Interval real_from(const Real& r, std::int64_t k) { return r.at(static_cast<int>(k)); }

} // namespace

DistOracle point_mass(const Real& a)
{
    DistOracle::Info info;
    info.kind = DistKind::point_mass;
    info.point = a;
    info.label = "point_mass";
    return DistOracle(std::move(info), [a](const TestFunction& f, const Dyadic& t, std::int64_t k) {
        const std::int64_t extra = int_bits(t) + int_bits(f.lip()) + 4;
        return refine_to(k, k + extra,
                         [&](std::int64_t p) { return windowed_point(f, real_from(a, p), t, p).round_out(p + 2); });
    });
}

DistOracle finite_discrete(AtomList atoms)
{
    if (atoms.empty())
        throw Error(ErrorKind::invalid_weights, "empty atom list");
    const std::int64_t check = 40 + detail::bits_of(atoms.size());
    Interval sum(0);
    for (const auto& a : atoms) {
        const Interval w = real_from(a.weight, check);
        if (w.negative())
            throw Error(ErrorKind::invalid_weights, "negative weight " + w.str());
        sum += w;
    }
    if (!sum.contains(Dyadic(1)))
        throw Error(ErrorKind::invalid_weights, "weights sum to " + sum.str() + ", not 1");

    auto shared = std::make_shared<const AtomList>(std::move(atoms));
    DistOracle::Info info;
    info.kind = DistKind::finite_discrete;
    info.atoms = shared;
    info.label = "finite_discrete";
    return DistOracle(std::move(info), [shared](const TestFunction& f, const Dyadic& t, std::int64_t k) {
        const std::int64_t spread = detail::bits_of(shared->size());
        const std::int64_t extra = int_bits(t) + int_bits(f.lip()) + spread + 4;
        return refine_to(k, k + extra, [&](std::int64_t p) {
            ComplexInterval s(Interval(0), Interval(0));
            for (const auto& a : *shared) {
                const ComplexInterval v = windowed_point(f, real_from(a.position, p), t, p);
                if (v.re == Interval(0) && v.im == Interval(0))
                    continue;
                s += v * real_from(a.weight, p);
            }
            return s.round_out(p + spread + 2);
        });
    });
}

namespace {

// C(m, l) p^l q^(m-l) for l = 0..m, rounded outward at 2^-p
std::vector<Interval> binomial_weights(unsigned m, const Interval& P, std::int64_t p)
{
    const Interval Q = Interval(1) - P;
    std::vector<Interval> pp(m + 1), qq(m + 1);
    pp[0] = qq[0] = Interval(1);
    for (unsigned l = 1; l <= m; ++l) {
        pp[l] = (pp[l - 1] * P).round_out(p + 8);
        qq[l] = (qq[l - 1] * Q).round_out(p + 8);
    }
    std::vector<Interval> w(m + 1);
    mpz_class c;
    for (unsigned l = 0; l <= m; ++l) {
        mpz_bin_uiui(c.get_mpz_t(), m, l);
        w[l] = (Interval(Dyadic(c, 0)) * pp[l] * qq[m - l]).round_out(p);
    }
    return w;
}

} // namespace

DistOracle binomial(unsigned m, const Real& p)
{
    const Interval P = real_from(p, 60);
    if (P.hi.sign() < 0 || Dyadic(1) < P.lo)
        throw Error(ErrorKind::invalid_weights, "binomial p outside [0, 1]: " + P.str());
    const std::int64_t mb = detail::bits_of(m) + 2;

    auto atoms = std::make_shared<AtomList>();
    for (unsigned l = 0; l <= m; ++l) {
        Real w([m, l, p, mb](int k) {
            return refine_to(k, k + 2 * mb + 4, [&](std::int64_t q) {
                return binomial_weights(m, real_from(p, q), q + mb)[l];
            });
        });
        atoms->push_back({Real::exact(Dyadic(static_cast<long>(l))), std::move(w)});
    }
    DistOracle::Info info;
    info.kind = DistKind::finite_discrete;
    info.atoms = atoms;
    info.label = "binomial";
    return DistOracle(std::move(info), [m, p, mb](const TestFunction& f, const Dyadic& t, std::int64_t k) {
        return refine_to(k, k + int_bits(t) + 2 * mb + 4, [&](std::int64_t q) {
            const std::vector<Interval> w = binomial_weights(m, real_from(p, q), q + mb);
            ComplexInterval s(Interval(0), Interval(0));
            for (unsigned l = 0; l <= m; ++l) {
                const ComplexInterval v = windowed_point(f, Interval(Dyadic(static_cast<long>(l))), t, q + mb);
                if (v.re == Interval(0) && v.im == Interval(0))
                    continue;
                s += v * w[l];
            }
            return s.round_out(q + 2);
        });
    });
}

DistOracle density_dist(Integrand d)
{
    if (!d.envelope || d.envelope->empty())
        throw Error(ErrorKind::unsupported_envelope, "density needs an envelope");
    const ComplexInterval mass = integrate_R(d, 12);
    if (!mass.re.contains(Dyadic(1)))
        throw Error(ErrorKind::not_normalized, "density integrates to " + mass.re.str());

    DistOracle::Info info;
    info.kind = DistKind::density;
    info.density = d;
    info.label = "density";
    return DistOracle(std::move(info), [d](const TestFunction& f, const Dyadic& t, std::int64_t k) {
        Integrand g;
        g.eval = [&](const Interval& x, std::int64_t p) {
            const Interval fx = f.pl().eval(x, p + 4);
            if (fx == Interval(0))
                return ComplexInterval(Interval(0), Interval(0));
            return cis(Interval(t) * x, p + 4) * (d.eval(x, p + 4) * fx);
        };
        if (d.deriv) {
            // (f' d + f d' + i t f d) e^{itx}
            g.deriv = [&](const Interval& x, std::int64_t p) {
                const Interval fx = f.pl().eval(x, p + 4);
                const ComplexInterval dx = d.eval(x, p + 4);
                const ComplexInterval prod = dx * f.pl().slope(x, p + 4) + d.deriv(x, p + 4) * fx +
                                             times_i(dx * fx) * Interval(t);
                return cis(Interval(t) * x, p + 4) * prod;
            };
        }
        return integrate_finite(g, f.support_lo(), f.support_hi(), k);
    });
}

DistOracle uniform(const Dyadic& lo, const Dyadic& hi)
{
    if (!(lo < hi))
        throw Error(ErrorKind::invalid_argument, "uniform needs lo < hi");
    const Dyadic len = hi - lo;
    const std::int64_t shrink = std::max<std::int64_t>(0, -len.ilog2());

    Integrand d;
    d.eval = [lo, hi, len](const Interval& x, std::int64_t p) {
        const Interval c = div(Interval(1), Interval(len), p);
        if (x.hi < lo || hi < x.lo)
            return ComplexInterval(Interval(0), Interval(0));
        if (lo <= x.lo && x.hi <= hi)
            return ComplexInterval(c, Interval(0));
        return ComplexInterval(hull(c, Interval(0)), Interval(0));
    };
    d.envelope = Envelope::make_compact(Dyadic::div_up(1, len, 64), max(lo.abs(), hi.abs()));

    DistOracle::Info info;
    info.kind = DistKind::density;
    info.density = d;
    info.label = "uniform";
    return DistOracle(std::move(info), [lo, hi, len, shrink](const TestFunction& f, const Dyadic& t, std::int64_t k) {
        const PiecewiseLinear r = f.pl().restricted(lo, hi, Dyadic(1));
        return refine_to(k, k + shrink + 4, [&](std::int64_t p) {
            const Interval c = div(Interval(1), Interval(len), p + shrink + 4);
            return r.fourier(Interval(t), p + shrink + 2) * c;
        });
    });
}

std::int64_t tightness(const DistOracle& mu, std::int64_t k)
{
    const Limits& lim = default_limits();
    const Dyadic threshold = Dyadic(1) - Dyadic::pow2(-k);
    for (std::size_t n = 0; n <= lim.max_tightness; ++n) {
        const TestFunction w = make_w(static_cast<unsigned>(n));
        for (std::int64_t p = k + 2; p <= k + 2 + lim.max_extra_bits; p += 2) {
            const Interval v = mu.windowed_eval(w, Interval(0), p).re;
            if (threshold < v.lo)
                return static_cast<std::int64_t>(n);
            if (v.hi <= threshold)
                break;
        }
    }
    throw Error(ErrorKind::budget_exhausted,
                "no window up to w_" + std::to_string(lim.max_tightness) + " certifies mass above 1 - 2^-" +
                    std::to_string(k));
}

std::int64_t seq_tightness(const DistConvergence& cert, std::int64_t k)
{
    const std::int64_t lead = tightness(*cert.limit, k + 1);
    const std::int64_t gamma = cert.modulus(lead, k + 1);
    if (gamma - cert.first > static_cast<std::int64_t>(default_limits().max_tightness))
        throw Error(ErrorKind::budget_exhausted, "convergence modulus " + std::to_string(gamma) + " too large");
    std::int64_t alpha = lead;
    for (std::int64_t m = cert.first; m < gamma; ++m)
        alpha = std::max(alpha, tightness(cert.sequence(m), k + 1));
    return alpha;
}

namespace {

Real real_from_json(const nlohmann::json& j)
{
    if (j.is_string())
        return Real::parse(j.get<std::string>());
    return Real::exact(dyadic_from_json(j));
}

const nlohmann::json& field(const nlohmann::json& j, const char* name)
{
    if (!j.contains(name))
        throw Error(ErrorKind::parse_error, std::string("distribution spec lacks \"") + name + "\"");
    return j.at(name);
}

} // namespace

DistOracle distribution_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw Error(ErrorKind::parse_error, "distribution spec needs a \"kind\" string");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "point_mass")
        return point_mass(real_from_json(field(j, "a")));
    if (kind == "finite_discrete") {
        const auto& arr = field(j, "atoms");
        if (!arr.is_array())
            throw Error(ErrorKind::parse_error, "\"atoms\" must be an array of [x, w] pairs");
        AtomList atoms;
        for (const auto& a : arr) {
            if (!a.is_array() || a.size() != 2)
                throw Error(ErrorKind::parse_error, "atom must be [x, w]");
            atoms.push_back({real_from_json(a[0]), real_from_json(a[1])});
        }
        return finite_discrete(std::move(atoms));
    }
    if (kind == "density_uniform") {
        if (j.contains("a")) {
            const Dyadic a = dyadic_from_json(j.at("a"));
            return uniform(-a, a);
        }
        return uniform(dyadic_from_json(field(j, "lo")), dyadic_from_json(field(j, "hi")));
    }
    if (kind == "binomial") {
        const auto& m = field(j, "m");
        if (!m.is_number_integer() || m.get<long>() < 0 || m.get<long>() > 1'000'000)
            throw Error(ErrorKind::parse_error, "binomial \"m\" must be a natural number");
        return binomial(m.get<unsigned>(), real_from_json(field(j, "p")));
    }
    throw Error(ErrorKind::parse_error, "unknown distribution kind '" + kind + "'");
}

} // namespace effdist
