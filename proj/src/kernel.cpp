#include "effdist/kernel.hpp"

#include "effdist/error.hpp"

#include "util.hpp"

#include <algorithm>

namespace effdist {

using detail::int_bits;
using detail::refine_to;

namespace {

Envelope scaled(Envelope e, const Dyadic& m)
{
    if (e.gaussian)
        e.gaussian->scale *= m;
    if (e.compact)
        e.compact->bound *= m;
    if (e.inverse_square)
        e.inverse_square->coeff *= m;
    return e;
}

void need_point(const Interval& x)
{
    if (!x.is_point())
        throw Error(ErrorKind::invalid_argument, "kernel quadrature needs a point x, got " + x.str());
}

} // namespace

ComplexInterval kernel_eval(const Kernel& F, const Interval& x, Lebesgue, std::int64_t k)
{
    if (!F.envelope)
        throw Error(ErrorKind::unsupported_envelope, "kernel has no envelope in y");
    need_point(x);
    Integrand g;
    g.eval = [&](const Interval& y, std::int64_t p) { return F.eval(x, y, p); };
    if (F.deriv_y)
        g.deriv = [&](const Interval& y, std::int64_t p) { return F.deriv_y(x, y, p); };
    g.envelope = F.envelope;
    return integrate_R(g, k);
}

ComplexInterval kernel_eval(const Kernel& F, const Interval& x, const DistOracle& mu, std::int64_t k)
{
    const auto& info = mu.info();
    switch (info.kind) {
    case DistKind::point_mass: {
        auto go = [&](std::int64_t p) { return F.eval(x, info.point->at(static_cast<int>(p)), p).round_out(p + 2); };
        return x.is_point() ? refine_to(k, k + 4, go) : go(k + 8);
    }
    case DistKind::finite_discrete: {
        const std::int64_t spread = detail::bits_of(info.atoms->size());
        auto go = [&](std::int64_t p) {
            ComplexInterval s(Interval(0), Interval(0));
            for (const auto& a : *info.atoms)
                s += F.eval(x, a.position.at(static_cast<int>(p)), p + spread) * a.weight.at(static_cast<int>(p));
            return s.round_out(p + spread + 2);
        };
        return x.is_point() ? refine_to(k, k + spread + 4, go) : go(k + spread + 8);
    }
    case DistKind::density: {
        need_point(x);
        const Integrand& d = *info.density;
        Integrand g;
        g.eval = [&](const Interval& y, std::int64_t p) { return F.eval(x, y, p + 2) * d.eval(y, p + 2 + int_bits(F.bound)); };
        if (F.deriv_y && d.deriv)
            g.deriv = [&](const Interval& y, std::int64_t p) {
                return F.deriv_y(x, y, p + 2) * d.eval(y, p + 2) + F.eval(x, y, p + 2) * d.deriv(y, p + 2);
            };
        g.envelope = scaled(*d.envelope, F.bound);
        return integrate_R(g, k);
    }
    case DistKind::bochner:
        break;
    }
    throw Error(ErrorKind::unsupported_envelope, "kernel integration against this measure kind is not supported");
}

std::int64_t kernel_modulus(const Kernel& F, const DistOracle& mu, std::int64_t H, std::int64_t k)
{
    if (!F.modulus)
        throw Error(ErrorKind::invalid_argument, "kernel has no modulus");
    const std::int64_t M = F.bound.ceil_int().get_si();
    const std::int64_t kk = k + 2 * M + 3;
    const std::int64_t l = std::max(H, tightness(mu, kk));
    return F.modulus(l + 1, kk);
}

std::int64_t kernel_modulus(const Kernel& F, Lebesgue, std::int64_t H, std::int64_t k)
{
    if (!F.modulus || !F.envelope)
        throw Error(ErrorKind::invalid_argument, "kernel needs a modulus and an envelope");
    Integrand probe;
    probe.envelope = F.envelope;
    const std::int64_t T = tail_cutoff(probe, k + 2);
    const std::int64_t kk = k + 2 + detail::bits_of(static_cast<std::uint64_t>(2 * T + 2));
    return F.modulus(std::max(H, T + 1), kk);
}

} // namespace effdist
