#include "doctest.h"
#include "reference.hpp"

#include "effdist/distributions.hpp"
#include "effdist/elementary.hpp"
#include "effdist/error.hpp"
#include "effdist/kernel.hpp"

#include <random>

using namespace effdist;

namespace {

Dyadic d(const char* s) { return Dyadic::parse(s); }

std::int64_t bits(std::int64_t n)
{
    std::int64_t b = 0;
    for (; n > 0; n >>= 1)
        ++b;
    return b;
}
Real r(const char* s) { return Real::parse(s); }

DistOracle two_point()
{
    return finite_discrete({{Real::exact(-1), r("1/2")}, {Real::exact(1), r("1/2")}});
}

Interval inv_sqrt_2pi(std::int64_t p) { return div(Interval(1), sqrt(pi(p + 8).mul_pow2(1), p + 8), p + 6); }

DistOracle standard_normal()
{
    Integrand g = real_integrand(
        [](const Interval& x, std::int64_t p) { return inv_sqrt_2pi(p) * exp_neg_sq_half(x, p + 4); },
        [](const Interval& x, std::int64_t p) { return -(inv_sqrt_2pi(p) * x * exp_neg_sq_half(x, p + 4)); });
    g.envelope = Envelope::make_gaussian(Dyadic(1), d("1/2"));
    return density_dist(g);
}

// mass of [-n, n] plus the ramps of w_n under N(0, 1)
ref::Mp normal_mass_of_w(long n)
{
    const ref::Mp s2 = ref::sqrt(ref::Mp(2));
    auto Phi0 = [&](const ref::Mp& x) { return ref::erf(x / s2) / ref::Mp(2); }; // Phi(x) - 1/2
    auto phi = [](const ref::Mp& x) { return ref::exp(-(x * x) / ref::Mp(2)) / ref::sqrt(ref::Mp(2) * ref::Mp::pi()); };
    const ref::Mp N(n), N1(n + 1);
    // 2 [ (Phi(n) - 1/2) + (n+1)(Phi(n+1) - Phi(n)) - (phi(n) - phi(n+1)) ]
    return ref::Mp(2) * (Phi0(N) + N1 * (Phi0(N1) - Phi0(N)) - (phi(N) - phi(N1)));
}

} // namespace

TEST_CASE("point masses")
{
    const DistOracle delta0 = point_mass(Real::exact(0));
    CHECK(delta0.kind() == DistKind::point_mass);
    for (int k : {4, 30}) {
        CHECK(delta0.windowed_eval(make_w(1), Interval(0), k).re.contains(Dyadic(1)));
        for (int i = -10; i <= 10; ++i) {
            const ComplexInterval z = delta0.windowed_eval(make_w(1), Interval(Dyadic(i * 7).mul_pow2(-2)), k);
            CHECK(z.re.contains(Dyadic(1)));
            CHECK(z.im.contains(Dyadic(0)));
            CHECK(z.width() <= Dyadic::pow2(-k));
        }
    }
    CHECK(point_mass(Real::exact(d("1/2"))).windowed_eval(make_w(0), Interval(0), 10).re.contains(d("1/2")));
    // delta_{1/3}(w_0 e^{ix}) = (2/3) e^{i/3}
    const DistOracle third = point_mass(r("1/3"));
    const ComplexInterval z = third.windowed_eval(make_w(0), Interval(1), 40);
    CHECK(z.width() <= Dyadic::pow2(-40));
    const ref::Mp a = ref::Mp::ratio(1, 3);
    CHECK(ref::encloses(z, ref::Mp::ratio(2, 3) * ref::cos(a), ref::Mp::ratio(2, 3) * ref::sin(a)));
    // computable t: delta_1(w_1 e^{i pi x}) = -1
    const ComplexInterval m1 = point_mass(Real::exact(1)).windowed_eval(make_w(1), Real::pi(), 20);
    CHECK(m1.re.contains(Dyadic(-1)));
    CHECK(m1.width() <= Dyadic::pow2(-20));
}

TEST_CASE("finite discrete measures")
{
    const DistOracle b = binomial(1, r("1/2"));
    CHECK(b.kind() == DistKind::finite_discrete);
    CHECK(b.windowed_eval(make_w(2), Interval(0), 12).re.contains(Dyadic(1)));
    CHECK(two_point().windowed_eval(make_w(0), Interval(0), 12).re.contains(Dyadic(0)));
    // (e^{it} + 1) / 2 with a window covering both atoms
    for (int i = -20; i <= 20; ++i) {
        const Dyadic t = Dyadic(i * 5).mul_pow2(-2);
        const ComplexInterval z = b.windowed_eval(make_w(1), Interval(t), 20);
        const ref::Mp rt(t);
        CHECK(ref::encloses(z, (ref::cos(rt) + ref::Mp(1)) / ref::Mp(2), ref::sin(rt) / ref::Mp(2)));
        CHECK(z.width() <= Dyadic::pow2(-20));
    }
    // binomial(4, 1/3) at t = 1: ((1/3) e^{i} + 2/3)^4
    const ComplexInterval z4 = binomial(4, r("1/3")).windowed_eval(make_w(4), Interval(1), 30);
    {
        const ref::Mp p = ref::Mp::ratio(1, 3), q = ref::Mp::ratio(2, 3);
        ref::Mp re = p * ref::cos(ref::Mp(1)) + q, im = p * ref::sin(ref::Mp(1));
        ref::Mp zr(1), zi(0);
        for (int j = 0; j < 4; ++j) {
            const ref::Mp nr = zr * re - zi * im, ni = zr * im + zi * re;
            zr = nr;
            zi = ni;
        }
        CHECK(ref::encloses(z4, zr, zi));
        CHECK(z4.width() <= Dyadic::pow2(-30));
    }
    CHECK_THROWS_AS(finite_discrete({{Real::exact(0), r("9/10")}}), Error);
    CHECK_THROWS_AS(finite_discrete({{Real::exact(0), Real::exact(2)}, {Real::exact(1), Real::exact(-1)}}), Error);
    CHECK_THROWS_AS(finite_discrete({}), Error);
    CHECK_THROWS_AS(binomial(3, r("3/2")), Error);
    try {
        finite_discrete({{Real::exact(0), r("1/3")}});
        FAIL("expected invalid weights");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_weights);
    }
}

TEST_CASE("densities")
{
    const DistOracle u = uniform(d("-1/2"), d("1/2"));
    CHECK(u.kind() == DistKind::density);
    CHECK(u.windowed_eval(make_w(1), Interval(0), 10).re.contains(Dyadic(1)));
    CHECK(u.windowed_eval(make_w(0), Interval(0), 10).re.contains(d("3/4")));
    for (int i = -20; i <= 20; ++i) {
        const Dyadic t = Dyadic(i * 9).mul_pow2(-2);
        const ComplexInterval z = u.windowed_eval(make_w(1), Interval(t), 24);
        const ref::Mp rt(t);
        const ref::Mp want = t.is_zero() ? ref::Mp(1) : ref::Mp(2) * ref::sin(rt / ref::Mp(2)) / rt;
        CHECK(ref::encloses(z, want, ref::Mp(0)));
        CHECK(z.width() <= Dyadic::pow2(-24));
    }
    // narrow uniform[-2^-5, 2^-5]
    const DistOracle narrow = uniform(-Dyadic::pow2(-5), Dyadic::pow2(-5));
    const ComplexInterval zn = narrow.windowed_eval(make_w(0), Interval(3), 20);
    CHECK(zn.width() <= Dyadic::pow2(-20));

    const DistOracle g = standard_normal();
    for (long n : {0L, 1L, 3L}) {
        const ComplexInterval z = g.windowed_eval(make_w(static_cast<unsigned>(n)), Interval(0), 16);
        CHECK(ref::encloses(z.re, normal_mass_of_w(n)));
        CHECK(z.width() <= Dyadic::pow2(-16));
    }
    Integrand twice = real_integrand([](const Interval& x, std::int64_t p) { return exp_neg_sq_half(x, p); });
    twice.envelope = Envelope::make_gaussian(Dyadic(1), Dyadic(1));
    CHECK_THROWS_AS(density_dist(twice), Error);
    Integrand bare = real_integrand([](const Interval&, std::int64_t) { return Interval(0); });
    CHECK_THROWS_AS(density_dist(bare), Error);
}

TEST_CASE("windows over an interval of frequencies")
{
    const DistOracle u = uniform(d("-1/2"), d("1/2"));
    const DistOracle b = binomial(3, r("1/4"));
    for (const DistOracle* mu : {&u, &b}) {
        for (int i = -8; i <= 8; ++i) {
            const Interval t(Dyadic(i).mul_pow2(-1), Dyadic(i).mul_pow2(-1) + Dyadic::pow2(-6));
            const ComplexInterval z = mu->windowed_eval(make_w(3), t, 14);
            for (int j = 0; j <= 4; ++j)
                CHECK(z.contains(mu->windowed_eval(make_w(3), Interval(t.lo + t.width() * Dyadic(j).mul_pow2(-2)), 14)));
        }
    }
}

TEST_CASE("tightness")
{
    const DistOracle delta0 = point_mass(Real::exact(0));
    for (int k = 0; k <= 20; ++k)
        CHECK(tightness(delta0, k) == 0);
    const DistOracle u = uniform(d("-1/2"), d("1/2"));
    CHECK(tightness(u, 3) == 1);
    // independent recheck of the certificate mu(w_1) > 1 - 2^-3
    CHECK(Dyadic(1) - Dyadic::pow2(-3) < u.windowed_eval(make_w(1), Interval(0), 5).re.lo);
    CHECK(Dyadic(1) - Dyadic::pow2(-3) >= u.windowed_eval(make_w(0), Interval(0), 5).re.hi);
    for (unsigned m : {1u, 2u, 5u})
        for (int k : {1, 6, 20})
            CHECK(tightness(binomial(m, r("1/3")), k) <= m);
    CHECK(tightness(standard_normal(), 4) == 2);

    // half of the mass escapes: no window ever certifies it
    DistOracle::Info info;
    info.kind = DistKind::point_mass;
    const DistOracle leaky(info, [](const TestFunction& f, const Dyadic&, std::int64_t) {
        return ComplexInterval(f.eval(Interval(0)) * Interval(d("1/2")), Interval(0));
    });
    try {
        tightness(leaky, 2);
        FAIL("expected budget exhaustion");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::budget_exhausted);
    }
}

TEST_CASE("sequence tightness")
{
    DistConvergence constant;
    constant.sequence = [](std::int64_t) { return point_mass(Real::exact(0)); };
    constant.limit = std::make_shared<DistOracle>(point_mass(Real::exact(0)));
    constant.modulus = [](std::int64_t, std::int64_t) { return 0; };
    for (int k : {0, 5, 12})
        CHECK(seq_tightness(constant, k) == 0);

    // uniform[-2^-m, 2^-m] -> delta_0: only w_0 sees a gap, 2^-(m+1)
    DistConvergence shrink;
    shrink.sequence = [](std::int64_t m) { return uniform(-Dyadic::pow2(-m), Dyadic::pow2(-m)); };
    shrink.limit = constant.limit;
    shrink.modulus = [](std::int64_t n, std::int64_t k) { return n >= 1 ? 0 : k; };
    shrink.first = 0;
    for (int k : {1, 4, 8}) {
        const std::int64_t a = seq_tightness(shrink, k);
        CHECK((a == 0 || a == 1));
        for (std::int64_t m = 0; m < 12; ++m)
            CHECK(Dyadic(1) - Dyadic::pow2(-k) < shrink.sequence(m).windowed_eval(make_w(a), Interval(0), k + 2).re.lo);
    }

    // delta_{1 - 1/m} -> delta_1; |w_n(1 - 1/m) - w_n(1)| <= 1/m
    DistConvergence slide;
    slide.sequence = [](std::int64_t m) { return point_mass(Real::ratio(m - 1, m)); };
    slide.limit = std::make_shared<DistOracle>(point_mass(Real::exact(1)));
    slide.modulus = [](std::int64_t, std::int64_t k) { return (std::int64_t{1} << k) + 1; };
    for (int k : {1, 3, 6})
        CHECK(seq_tightness(slide, k) <= 1);
}

TEST_CASE("property: probability bounds and monotonicity in n")
{
    std::vector<DistOracle> all = {point_mass(r("1/3")), two_point(), binomial(3, r("2/5")),
                                   uniform(d("-1/2"), d("1/2")), uniform(Dyadic(0), d("5/2")), standard_normal()};
    for (const auto& mu : all) {
        const int k = 10;
        Dyadic prev_hi(-1);
        for (unsigned n = 0; n <= 4; ++n) {
            const Interval v = mu.windowed_eval(make_w(n), Interval(0), k).re;
            CHECK(Dyadic(0) <= v.hi);
            CHECK(v.lo <= Dyadic(1) + Dyadic::pow2(-k));
            CHECK(v.width() <= Dyadic::pow2(-k));
            CHECK(prev_hi - Dyadic::pow2(-k + 1) <= v.hi);
            prev_hi = v.hi;
        }
    }
}

TEST_CASE("property: binomial agrees with brute-force summation")
{
    const DistOracle b = binomial(1, r("1/2"));
    const DistOracle atoms = finite_discrete({{Real::exact(0), r("1/2")}, {Real::exact(1), r("1/2")}});
    for (unsigned n = 0; n <= 4; ++n) {
        const TestFunction w = make_w(n);
        const Interval brute = (w.eval(Interval(0)) + w.eval(Interval(1))) * Interval(d("1/2"));
        const Interval x = b.windowed_eval(w, Interval(0), 20).re;
        const Interval y = atoms.windowed_eval(w, Interval(0), 20).re;
        CHECK(x.intersects(brute));
        CHECK(y.intersects(brute));
        CHECK(x.intersects(y));
    }
}

TEST_CASE("distribution specs from JSON")
{
    using nlohmann::json;
    CHECK(tightness(distribution_from_json(json::parse(R"({"kind":"point_mass","a":"0"})")), 10) == 0);
    const DistOracle b = distribution_from_json(json::parse(R"({"kind":"binomial","m":4,"p":"1/2"})"));
    CHECK(b.windowed_eval(make_w(4), Interval(0), 10).re.contains(Dyadic(1)));
    const DistOracle u = distribution_from_json(json::parse(R"({"kind":"density_uniform","a":"1/2"})"));
    CHECK(u.windowed_eval(make_w(0), Interval(0), 10).re.contains(d("3/4")));
    const DistOracle u2 = distribution_from_json(json::parse(R"({"kind":"density_uniform","lo":{"m":-1,"e":-1},"hi":"1/2"})"));
    CHECK(u2.windowed_eval(make_w(0), Interval(0), 10).re.contains(d("3/4")));
    const DistOracle fd = distribution_from_json(json::parse(R"({"kind":"finite_discrete","atoms":[[-1,"1/2"],[1,"1/2"]]})"));
    CHECK(fd.windowed_eval(make_w(0), Interval(0), 10).re.contains(Dyadic(0)));
    for (const char* bad : {R"({"kind":"gamma"})", R"({"kind":"binomial","m":-1,"p":"1/2"})", R"([1,2])",
                            R"({"kind":"point_mass"})", R"({"kind":"finite_discrete","atoms":[[1]]})",
                            R"({"kind":"point_mass","a":"x"})"}) {
        try {
            distribution_from_json(json::parse(bad));
            FAIL("accepted " << bad);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::parse_error);
        }
    }
}

TEST_CASE("kernel integrals")
{
    Kernel window;
    const TestFunction w1 = make_w(1);
    window.eval = [w1](const Interval&, const Interval& y, std::int64_t) { return ComplexInterval(w1.eval(y), Interval(0)); };
    window.bound = Dyadic(1);
    const DistOracle delta0 = point_mass(Real::exact(0));
    for (int x : {-3, 0, 5})
        CHECK(kernel_eval(window, Interval(x), delta0, 10).re.contains(Dyadic(1)));

    Kernel wave;
    wave.eval = [](const Interval& x, const Interval& y, std::int64_t p) { return cis(x * y, p); };
    wave.bound = Dyadic(1);
    for (int x : {-3, 0, 5})
        CHECK(kernel_eval(wave, Interval(x), delta0, 10).re.contains(Dyadic(1)));

    Kernel gauss;
    gauss.eval = [](const Interval& x, const Interval& y, std::int64_t p) {
        return cis(x * y, p + 2) * exp_neg_sq_half(y, p + 2);
    };
    gauss.deriv_y = [](const Interval& x, const Interval& y, std::int64_t p) {
        return cis(x * y, p + 4) * exp_neg_sq_half(y, p + 4) * ComplexInterval(-y, x);
    };
    gauss.envelope = Envelope::make_gaussian(Dyadic(1), Dyadic(1));
    gauss.bound = Dyadic(1);
    for (int x : {0, 1}) {
        const ComplexInterval z = kernel_eval(gauss, Interval(x), Lebesgue{}, 16);
        const ref::Mp want = ref::sqrt(ref::Mp(2) * ref::Mp::pi()) * ref::exp(ref::Mp(-x * x) / ref::Mp(2));
        CHECK(ref::encloses(z, want, ref::Mp(0)));
        CHECK(z.width() <= Dyadic::pow2(-16));
    }
    CHECK_THROWS_AS(kernel_eval(gauss, Interval(0, 1), Lebesgue{}, 4), Error);
    CHECK_THROWS_AS(kernel_eval(wave, Interval(0), Lebesgue{}, 4), Error);

    // against the standard normal: integral of e^{ixy} phi(y) dy = e^{-x^2/2}
    const DistOracle g = standard_normal();
    const ComplexInterval z = kernel_eval(wave, Interval(1), g, 12);
    CHECK(ref::encloses(z.re, ref::exp(ref::Mp(-1) / ref::Mp(2))));
    CHECK(z.width() <= Dyadic::pow2(-12));
    // discrete: cos x for the two-point measure
    const ComplexInterval c = kernel_eval(wave, Interval(2), two_point(), 20);
    CHECK(ref::encloses(c, ref::cos(ref::Mp(2)), ref::Mp(0)));
}

TEST_CASE("property: kernel modulus of continuity")
{
    // F(x, y) = e^{ixy} w_2(y): |dF| <= |dw_2| + |x dy| + |y dx| <= (1 + 2H) delta
    Kernel F;
    const TestFunction w2 = make_w(2);
    F.eval = [w2](const Interval& x, const Interval& y, std::int64_t p) { return cis(x * y, p) * w2.eval(y); };
    F.bound = Dyadic(1);
    F.modulus = [](std::int64_t H, std::int64_t k) {
        return k + 1 + bits(1 + 2 * H);
    };
    const std::vector<DistOracle> ms = {uniform(d("-1/2"), d("1/2")), binomial(2, r("1/3")), two_point()};
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> pos(-96, 96);
    for (const auto& mu : ms) {
        for (int k : {2, 5}) {
            const std::int64_t H = 3;
            const std::int64_t beta = kernel_modulus(F, mu, H, k);
            for (int i = 0; i < 10; ++i) {
                const Dyadic x = Dyadic(pos(rng)).mul_pow2(-5);
                const Dyadic step = Dyadic::pow2(-beta) - Dyadic::pow2(-beta - 8);
                const int ke = k + 6;
                const ComplexInterval a = kernel_eval(F, Interval(x), mu, ke);
                const ComplexInterval b = kernel_eval(F, Interval(x + step), mu, ke);
                CHECK((a.re - b.re).mag() < Dyadic::pow2(-k) + Dyadic::pow2(-ke + 1));
                CHECK((a.im - b.im).mag() < Dyadic::pow2(-k) + Dyadic::pow2(-ke + 1));
            }
        }
    }
}
