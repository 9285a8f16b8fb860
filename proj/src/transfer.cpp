#include "effdist/transfer.hpp"

#include "effdist/elementary.hpp"
#include "effdist/error.hpp"

#include "util.hpp"

#include <algorithm>
#include <string>

namespace effdist {

using detail::int_bits;
using detail::refine_to;

namespace {

Dyadic dy(std::uint64_t n) { return Dyadic(mpz_class(static_cast<unsigned long>(n)), 0); }

Interval inv_two_pi(std::int64_t p) { return div(Interval(1), pi(p + 2).mul_pow2(1), p + 2); }

Dyadic inv_two_pi_upper() { return inv_two_pi(40).hi; }

// F(u) = int f(x) e^{iux} dx
ComplexInterval fourier(const TestFunction& f, const Interval& u, std::int64_t p) { return f.pl().fourier(u, p); }

// Enclosure of F' over U near 0: a symmetric difference at the midpoint,
// corrected by the third moment of |f|, spread by the second moment times rad U.
ComplexInterval fourier_deriv_near0(const TestFunction& f, const Interval& U, std::int64_t p)
{
    const Dyadic S = f.support_bound(), l1 = f.l1_upper();
    const Dyadic m2 = S * S * l1, m3 = m2 * S;
    const std::int64_t e = (p + 3 + int_bits(m3)) / 2 + 1;
    const std::int64_t q = p + e + 4;
    const Dyadic c = U.mid(), d = Dyadic::pow2(-e);
    const ComplexInterval diff = (fourier(f, Interval(c + d), q) - fourier(f, Interval(c - d), q)).mul_pow2(e - 1);
    return diff.widen((m3 * d * d).mul_pow2(-2) + m2 * U.rad());
}

// F and F' over U
std::pair<ComplexInterval, ComplexInterval> fourier_pair(const TestFunction& f, const Interval& U, std::int64_t p)
{
    if (auto r = f.pl().fourier_and_deriv(U, p))
        return *r;
    return {fourier(f, U, p), fourier_deriv_near0(f, U, p)};
}

Interval gauss(const Interval& z, const Dyadic& two_var, std::int64_t p)
{
    return exp(-div(sqr(z), Interval(two_var), p + 4 + int_bits(z.mag())), p + 2);
}

// g_n over z at working precision p
ComplexInterval weight(const TestFunction& f, std::uint64_t n, const Interval& z, std::int64_t p)
{
    const std::int64_t q = p + 4 + int_bits(f.l1_upper());
    return (fourier(f, -z, q) * (gauss(z, dy(n).mul_pow2(1), q) * inv_two_pi(q))).round_out(q);
}

// g_n'(z) = (1/2pi) G(z) (-(z/n) F(-z) - F'(-z))
ComplexInterval weight_deriv(const TestFunction& f, std::uint64_t n, const Interval& z, std::int64_t p)
{
    const std::int64_t q = p + 4 + int_bits(f.l1_upper()) + int_bits(f.support_bound());
    const auto [F, dF] = fourier_pair(f, -z, q);
    const ComplexInterval inner = -(F * div(z, Interval(dy(n)), q) + dF);
    return (inner * (gauss(z, dy(n).mul_pow2(1), q) * inv_two_pi(q))).round_out(q);
}

// e^{-t^2/n} and its derivative over t
struct Damping {
    Dyadic two_var; // n
    Interval G(const Interval& t, std::int64_t p) const { return gauss(t, two_var, p); }
    Interval dG(const Interval& t, std::int64_t p) const
    {
        return -div(t.mul_pow2(1), Interval(two_var), p + 4 + int_bits(t.mag())) * G(t, p + 2);
    }
};

Damping damping(std::uint64_t n)
{
    if (n == 0)
        throw Error(ErrorKind::invalid_argument, "Bochner damping needs n >= 1");
    return Damping{dy(n)};
}

const ComplexInterval& czero()
{
    static const ComplexInterval z(Interval(0), Interval(0));
    return z;
}

} // namespace

SmoothingPlan smoothing_params(const TestFunction& f, std::int64_t k)
{
    SmoothingPlan plan;
    plan.k_target = k;
    if (f.is_zero())
        return plan;
    const Dyadic target = Dyadic::pow2(-(k + 1));
    const Interval twoM(f.sup_norm().mul_pow2(1));
    const std::int64_t p = k + 8 + int_bits(f.sup_norm());
    std::int64_t L = 0;
    while (!((twoM * exp(Interval(Dyadic(-L * L).mul_pow2(-1)), p)).hi < target))
        ++L;
    const std::int64_t alpha = modulus_tf(f, k + 1);
    const std::int64_t lb = detail::bits_of(static_cast<std::uint64_t>(L * L));
    if (lb + 2 * alpha > 62)
        throw Error(ErrorKind::precision_overflow, "smoothing parameter n exceeds 2^62 at k=" + std::to_string(k));
    plan.L = L;
    plan.n = static_cast<std::uint64_t>(L * L) * (std::uint64_t{1} << (2 * alpha)) + 1;
    return plan;
}

ComplexInterval fourier_weight(const TestFunction& f, std::uint64_t n, const Interval& z, std::int64_t k)
{
    if (n == 0)
        throw Error(ErrorKind::invalid_argument, "fourier_weight needs n >= 1");
    if (f.is_zero())
        return czero();
    if (!z.is_point())
        return weight(f, n, z, k + 4);
    return refine_to(k, k + 4, [&](std::int64_t p) { return weight(f, n, z, p); });
}

Envelope fourier_weight_envelope(const TestFunction& f, std::uint64_t n)
{
    const Dyadic c = inv_two_pi_upper();
    Envelope e = Envelope::make_gaussian(dy(n), f.l1_upper() * c);
    // |F(z)| <= V / z^2 for continuous piecewise-linear f
    if (f.pl().jump_total().is_zero())
        e.inverse_square = Envelope::InverseSquare{f.pl().slope_variation_upper() * c, Dyadic(1)};
    return e;
}

Dyadic fourier_weight_l1(const TestFunction& f, std::uint64_t n)
{
    // (1/2pi) int min(||f||_1, V/z^2) <= (||f||_1 + V)/pi, and
    // (1/2pi) ||f||_1 sqrt(2 pi n) = ||f||_1 sqrt(n / 2pi); pi > 3 in both.
    const Dyadic l1 = f.l1_upper();
    const Dyadic gaussian = l1 * Dyadic::sqrt_up(Dyadic::div_up(dy(n), Dyadic(6), 40), 40);
    if (!f.pl().jump_total().is_zero())
        return gaussian;
    const Dyadic split = Dyadic::div_up(l1 + f.pl().slope_variation_upper(), Dyadic(3), 40);
    return min(gaussian, split);
}

ComplexInterval smoothed_expectation(const CharOracle& phi, const TestFunction& f, std::uint64_t n, std::int64_t k)
{
    if (n == 0)
        throw Error(ErrorKind::invalid_argument, "smoothed_expectation needs n >= 1");
    if (f.is_zero())
        return czero();
    Integrand I;
    I.eval = [phi, f, n](const Interval& z, std::int64_t p) {
        return (phi.eval(z, p + 2) * weight(f, n, z, p + 2)).round_out(p + 2);
    };
    if (phi.has_deriv()) {
        I.deriv = [phi, f, n](const Interval& z, std::int64_t p) {
            return (phi.deriv(z, p + 2) * weight(f, n, z, p + 2) + phi.eval(z, p + 2) * weight_deriv(f, n, z, p + 2))
                .round_out(p + 2);
        };
    }
    I.envelope = fourier_weight_envelope(f, n);
    return integrate_R(I, k);
}

Interval glivenko_eval(const CharOracle& phi, const TestFunction& f, std::int64_t k)
{
    const SmoothingPlan plan = smoothing_params(f, k + 1);
    const ComplexInterval J = smoothed_expectation(phi, f, plan.n, k + 1);
    if (!J.im.contains(Dyadic()))
        throw Error(ErrorKind::imaginary_residual,
                    "imaginary part of the smoothed expectation excludes 0: " + J.im.str());
    return J.re.widen(Dyadic::pow2(-(k + 1)));
}

std::int64_t glivenko_modulus(const CharConvergence& cert, const TestFunction& f, std::int64_t k)
{
    if (f.is_zero())
        return 0;
    const SmoothingPlan plan = smoothing_params(f, k + 2);
    Integrand env;
    env.envelope = fourier_weight_envelope(f, plan.n);
    const std::int64_t T = tail_cutoff(env, k + 3);
    const Dyadic l1 = fourier_weight_l1(f, plan.n);
    const std::int64_t B = std::max<std::int64_t>(0, detail::exp_above(l1));
    return cert.modulus(T, k + 3 + B);
}

CharConvergence damped_cert(const CharOracle& phi)
{
    CharConvergence c;
    c.limit = std::make_shared<CharOracle>(phi);
    c.sequence = [phi](std::int64_t n) {
        if (n < 1)
            throw Error(ErrorKind::invalid_argument, "damped sequence starts at n = 1");
        const Damping D = damping(static_cast<std::uint64_t>(n));
        CharOracle psi(
            [phi, D](const Dyadic& t, std::int64_t k) {
                return refine_to(k, k + 4, [&](std::int64_t p) {
                    return (phi.eval(t, p + 2) * D.G(Interval(t), p + 2)).round_out(p + 2);
                });
            },
            // e^{-t^2/n} is 1-Lipschitz
            [phi](std::int64_t k) { return std::max(phi.modulus(k + 1), lipschitz_modulus(Dyadic(1), k + 1)); },
            "damped(" + phi.label() + ", " + std::to_string(n) + ")", phi.unit_at_zero(), phi.pos_def());
        if (phi.has_deriv()) {
            psi.with_deriv([phi, D](const Interval& t, std::int64_t p) {
                const std::int64_t q = p + 4;
                return (phi.deriv(t, q) * D.G(t, q) + phi.eval(t, q) * D.dG(t, q)).round_out(p + 2);
            });
        }
        return psi;
    };
    // |psi_n - phi| <= t^2 / n <= M^2 / n < 2^-k
    c.modulus = [](std::int64_t M, std::int64_t k) {
        const std::int64_t mb = detail::bits_of(static_cast<std::uint64_t>(M * M));
        if (mb + k > 62)
            throw Error(ErrorKind::precision_overflow, "damping index exceeds 2^62");
        return M * M * (std::int64_t{1} << k) + 1;
    };
    return c;
}

namespace {

Interval real_part_checked(const ComplexInterval& z, const char* what)
{
    if (!z.im.contains(Dyadic()))
        throw Error(ErrorKind::imaginary_residual, std::string(what) + ": imaginary part excludes 0: " + z.im.str());
    return z.re;
}

} // namespace

Interval bochner_density(const CharOracle& phi, std::uint64_t n, const Interval& x, std::int64_t k)
{
    const Damping D = damping(n);
    // K(t) = (1/2pi) e^{-t^2/n} e^{-ixt}
    auto K = [D, x](const Interval& t, std::int64_t p) {
        const std::int64_t q = p + 4 + int_bits(x.mag());
        return (cis(-(x * t), q) * (D.G(t, q) * inv_two_pi(q))).round_out(q);
    };
    Integrand I;
    I.eval = [phi, K](const Interval& t, std::int64_t p) { return (phi.eval(t, p + 2) * K(t, p + 2)).round_out(p + 2); };
    if (phi.has_deriv()) {
        I.deriv = [phi, K, D, x](const Interval& t, std::int64_t p) {
            const std::int64_t q = p + 4 + int_bits(x.mag());
            // K'(t) = K(t) (-2t/n - ix)
            const ComplexInterval log_dK(-div(t.mul_pow2(1), Interval(D.two_var), q), -x);
            const ComplexInterval k = K(t, q);
            return (phi.deriv(t, q) * k + phi.eval(t, q) * (k * log_dK)).round_out(p + 2);
        };
    }
    I.envelope = Envelope::make_gaussian(D.two_var.mul_pow2(-1), inv_two_pi_upper());
    const Interval r = real_part_checked(integrate_R(I, k), "Bochner density");
    if (r.hi.sign() < 0)
        throw Error(ErrorKind::negativity_violation, "Bochner density is certified negative at x=" + x.str() + ": " + r.str());
    return r;
}

Interval bochner_mass(const CharOracle& phi, std::uint64_t n, const Dyadic& X, std::int64_t k)
{
    if (X.sign() < 0)
        throw Error(ErrorKind::invalid_argument, "bochner_mass needs X >= 0");
    if (X.is_zero())
        return Interval(0);
    const Damping D = damping(n);
    // S(t) = X sinc(Xt) / pi
    auto S = [X](const Interval& t, std::int64_t p) {
        const std::int64_t q = p + 4 + int_bits(X);
        return (Interval(X) * sinc(Interval(X) * t, q) * inv_two_pi(q).mul_pow2(1)).round_out(q);
    };
    auto dS = [X](const Interval& t, std::int64_t p) {
        const std::int64_t q = p + 4 + 2 * int_bits(X);
        return (Interval(X * X) * sinc_deriv(Interval(X) * t, q) * inv_two_pi(q).mul_pow2(1)).round_out(q);
    };
    Integrand I;
    I.eval = [phi, D, S](const Interval& t, std::int64_t p) {
        const std::int64_t q = p + 2;
        return (phi.eval(t, q) * (D.G(t, q) * S(t, q))).round_out(q);
    };
    if (phi.has_deriv()) {
        I.deriv = [phi, D, S, dS](const Interval& t, std::int64_t p) {
            const std::int64_t q = p + 4;
            const Interval G = D.G(t, q), s = S(t, q);
            return (phi.deriv(t, q) * (G * s) + phi.eval(t, q) * (D.dG(t, q) * s + G * dS(t, q))).round_out(p + 2);
        };
    }
    I.envelope = Envelope::make_gaussian(D.two_var.mul_pow2(-1), Dyadic::div_up(X, Dyadic(3), 40));
    return real_part_checked(integrate_R(I, k), "Bochner mass");
}

Dyadic bochner_tail(const CharOracle& phi, std::uint64_t n, const Dyadic& u, std::int64_t k)
{
    if (u.sign() <= 0)
        throw Error(ErrorKind::invalid_argument, "bochner_tail needs u > 0");
    const Damping D = damping(n);
    Integrand I;
    I.eval = [phi, D](const Interval& t, std::int64_t p) {
        return (ComplexInterval(Interval(1), Interval(0)) - phi.eval(t, p + 2) * D.G(t, p + 2)).round_out(p + 2);
    };
    if (phi.has_deriv()) {
        I.deriv = [phi, D](const Interval& t, std::int64_t p) {
            const std::int64_t q = p + 4;
            return (-(phi.deriv(t, q) * D.G(t, q) + phi.eval(t, q) * D.dG(t, q))).round_out(p + 2);
        };
    }
    const std::int64_t kk = k + 2 + std::max<std::int64_t>(0, -u.ilog2());
    const ComplexInterval R = integrate_finite(I, -u, u, kk);
    // the exact integral is real; its real part bounds the tail
    return max(Dyadic(), Dyadic::div_up(R.re.hi, u, k + 4));
}

BochnerMass bochner_normalization(const CharOracle& phi, std::uint64_t n, std::int64_t k)
{
    const Dyadic target = Dyadic::pow2(-(k + 1));
    for (std::int64_t j = 0; j <= 62; ++j) {
        const Dyadic u = Dyadic::pow2(-j);
        const Dyadic tail = bochner_tail(phi, n, u, k + 3);
        if (tail < target) {
            BochnerMass m;
            m.X = Dyadic::pow2(j + 1);
            m.tail = tail;
            m.core = bochner_mass(phi, n, m.X, k + 1);
            return m;
        }
    }
    throw Error(ErrorKind::budget_exhausted, "no truncation point certifies the Bochner tail");
}

DistOracle bochner_dist(const CharOracle& phi)
{
    DistOracle::Info info;
    info.kind = DistKind::bochner;
    info.label = "bochner(" + phi.label() + ")";
    auto window = [phi](const TestFunction& f, const Dyadic& t, std::int64_t k) -> ComplexInterval {
        if (f.is_zero())
            return czero();
        // (lip + |t| M_f) 2 / sqrt(pi n) < 2^-(k+2) once n > (lip + |t| M_f)^2 4^(k+3) / 3
        const Dyadic lipt = f.lip() + t.abs() * f.sup_norm();
        const mpz_class need = (lipt * lipt).mul_pow2(2 * (k + 3)).floor_int() / 3 + 1;
        if (mpz_sizeinbase(need.get_mpz_t(), 2) > 62)
            throw Error(ErrorKind::precision_overflow, "Bochner damping index exceeds 2^62");
        const std::uint64_t n = need.get_ui();
        const Damping D = damping(n);
        Integrand I;
        I.eval = [phi, f, D, t](const Interval& s, std::int64_t p) {
            const std::int64_t q = p + 4 + int_bits(f.l1_upper());
            return (phi.eval(s, q) * (fourier(f, Interval(t) - s, q) * (D.G(s, q) * inv_two_pi(q)))).round_out(p + 2);
        };
        if (phi.has_deriv()) {
            I.deriv = [phi, f, D, t](const Interval& s, std::int64_t p) {
                const std::int64_t q = p + 6 + int_bits(f.l1_upper()) + int_bits(f.support_bound());
                const Interval u = Interval(t) - s;
                auto [F, dF] = fourier_pair(f, u, q);
                dF = -dF;
                const Interval G = D.G(s, q), dG = D.dG(s, q);
                const ComplexInterval v = (phi.deriv(s, q) * G + phi.eval(s, q) * dG) * F + phi.eval(s, q) * (dF * G);
                return (v * inv_two_pi(q)).round_out(p + 2);
            };
        }
        const Dyadic c = inv_two_pi_upper();
        Envelope env = Envelope::make_gaussian(D.two_var.mul_pow2(-1), f.l1_upper() * c);
        // |s| >= 2|t| gives |t - s| >= |s|/2, so |F(t - s)| <= 4V / s^2
        if (f.pl().jump_total().is_zero())
            env.inverse_square =
                Envelope::InverseSquare{f.pl().slope_variation_upper().mul_pow2(2) * c, max(t.abs().mul_pow2(1), Dyadic(1))};
        I.envelope = env;
        return integrate_R(I, k + 1).widen(Dyadic::pow2(-(k + 2)));
    };
    return DistOracle(std::move(info), window);
}

} // namespace effdist
