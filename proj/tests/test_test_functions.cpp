#include "doctest.h"
#include "reference.hpp"

#include "effdist/error.hpp"
#include "effdist/json_io.hpp"
#include "effdist/test_functions.hpp"

#include <random>

using namespace effdist;

namespace {

Dyadic d(const char* s) { return Dyadic::parse(s); }

// Composite Simpson rule in MPFR on each segment; used only as a loose cross-check.
std::pair<ref::Mp, ref::Mp> simpson_fourier(const PiecewiseLinear& f, const ref::Mp& t, int per_segment)
{
    ref::Mp re(0), im(0);
    const auto& ks = f.knots();
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
        const ref::Mp x0(ks[i].x), x1(ks[i + 1].x), y0(ks[i].y), y1(ks[i + 1].y);
        if (!(x0 < x1))
            continue;
        const ref::Mp h = (x1 - x0) / ref::Mp(per_segment);
        for (int j = 0; j <= per_segment; ++j) {
            const ref::Mp x = x0 + h * ref::Mp(j);
            const ref::Mp y = y0 + (y1 - y0) * ref::Mp(j) / ref::Mp(per_segment);
            const int w = (j == 0 || j == per_segment) ? 1 : (j % 2 ? 4 : 2);
            re = re + ref::Mp(w) * y * ref::cos(t * x) * h / ref::Mp(3);
            im = im + ref::Mp(w) * y * ref::sin(t * x) * h / ref::Mp(3);
        }
    }
    return {re, im};
}

bool near(const Interval& iv, const ref::Mp& x, double tol)
{
    return ref::Mp(iv.lo) - ref::Mp(tol) <= x && x <= ref::Mp(iv.hi) + ref::Mp(tol);
}

} // namespace

TEST_CASE("w_n examples")
{
    const TestFunction w1 = make_w(1);
    CHECK(eval_tf(w1, Interval(d("1/2"))) == Interval(1));
    CHECK(eval_tf(w1, Interval(d("3/2"))) == Interval(d("1/2")));
    CHECK(eval_tf(w1, Interval(3)) == Interval(0));
    CHECK(eval_tf(make_w(0), Interval(0)) == Interval(1));
    CHECK(eval_tf(make_w(0), Interval(d("-1/2"))) == Interval(d("1/2")));
    CHECK(eval_tf(make_w(2), Interval(-3, 3)) == Interval(0, 1));
    CHECK(w1.lip() == Dyadic(1));
    CHECK(w1.sup_norm() == Dyadic(1));
    CHECK(w1.support_lo() == Dyadic(-2));
    CHECK(w1.support_hi() == Dyadic(2));
    CHECK(w1.support_bound() == Dyadic(2));
    CHECK(w1.pl().integral() == Dyadic(3));
}

TEST_CASE("modulus of continuity")
{
    for (int k : {0, 1, 7, 30})
        CHECK(modulus_tf(make_w(3), k) == k + 1);
    const TestFunction steep({{0, 0}, {1, 4}, {2, 0}});
    CHECK(steep.lip() == Dyadic(4));
    CHECK(modulus_tf(steep, 3) == 6);
    CHECK(modulus_tf(TestFunction(), 9) == 0);
    // |x - y| < 2^-alpha  =>  |f(x) - f(y)| < 2^-k on a grid
    const TestFunction odd({{d("-3/4"), 0}, {d("1/4"), 3}, {d("5/4"), d("-1/2")}, {d("9/4"), 0}});
    for (int k : {1, 4, 9}) {
        const std::int64_t a = modulus_tf(odd, k);
        const Dyadic step = Dyadic::pow2(-a - 1);
        for (int i = -40; i < 160; ++i) {
            const Dyadic x = Dyadic(i).mul_pow2(-4);
            const Interval gap = odd.eval(Interval(x + step)) - odd.eval(Interval(x));
            CHECK(gap.mag() < Dyadic::pow2(-k) + Dyadic::pow2(-90));
        }
    }
}

TEST_CASE("construction errors")
{
    CHECK_THROWS_AS(TestFunction({{0, 1}, {1, 0}}), Error);
    CHECK_THROWS_AS(TestFunction({{1, 0}, {0, 0}}), Error);
    CHECK_THROWS_AS(TestFunction({{0, 0}, {0, 1}, {1, 0}}), Error);
    CHECK(TestFunction({{0, 0}, {3, 0}}).is_zero());
}

TEST_CASE("property: partition of unity, sandwich and monotonicity of w_n")
{
    for (unsigned n = 0; n <= 6; ++n) {
        const TestFunction w = make_w(n), w_next = make_w(n + 1);
        const ComplementFunction wc = make_wc(n);
        const Dyadic N(static_cast<long>(n));
        for (int i = -320; i <= 320; ++i) {
            const Dyadic x = Dyadic(i).mul_pow2(-5);
            const Interval v = w.eval(Interval(x));
            CHECK((v + wc.eval(Interval(x))).contains(Dyadic(1)));
            const int inner = (-N <= x && x <= N) ? 1 : 0;
            const int outer = (-N - Dyadic(1) <= x && x <= N + Dyadic(1)) ? 1 : 0;
            CHECK(Dyadic(inner) <= v.lo);
            CHECK(v.hi <= Dyadic(outer));
            CHECK(v.hi <= w_next.eval(Interval(x)).lo);
        }
    }
}

TEST_CASE("interval evaluation encloses the range")
{
    std::mt19937_64 rng(5);
    const TestFunction f({{-2, 0}, {d("-3/2"), d("5/4")}, {d("1/8"), d("-1/2")}, {1, 2}, {d("7/4"), 0}});
    std::uniform_int_distribution<int> pos(-80, 80), len(0, 20);
    for (int i = 0; i < 500; ++i) {
        const Dyadic a = Dyadic(pos(rng)).mul_pow2(-5);
        const Dyadic b = a + Dyadic(len(rng)).mul_pow2(-5);
        const Interval r = f.eval(Interval(a, b));
        for (int j = 0; j <= 16; ++j) {
            const Dyadic x = a + (b - a) * Dyadic(j).mul_pow2(-4);
            CHECK(r.contains(f.eval(Interval(x))));
        }
        CHECK(r.width() <= f.sup_norm() * Dyadic(2));
    }
}

TEST_CASE("Fourier transform of w_n matches the closed form")
{
    // integral of w_n e^{itx} = 2 (cos nt - cos (n+1)t) / t^2
    for (unsigned n : {0u, 1u, 3u}) {
        const TestFunction w = make_w(n);
        for (int i = -60; i <= 60; ++i) {
            const Dyadic t = Dyadic(i * 37).mul_pow2(-6);
            for (int p : {10, 40}) {
                const ComplexInterval F = w.pl().fourier(Interval(t), p);
                CHECK(F.width() <= Dyadic::pow2(-p));
                const ref::Mp rt(t), N(static_cast<long>(n));
                const ref::Mp want = t.is_zero() ? ref::Mp(static_cast<long>(2 * n + 1))
                                                 : ref::Mp(2) * (ref::cos(N * rt) - ref::cos((N + ref::Mp(1)) * rt)) /
                                                       (rt * rt);
                CHECK(ref::encloses(F.re, want));
                CHECK(ref::encloses(F.im, ref::Mp(0)));
            }
        }
    }
}

TEST_CASE("Fourier transform of general piecewise-linear functions")
{
    const PiecewiseLinear jumpy({{d("-1/2"), 0}, {d("-1/2"), 1}, {d("1/2"), 1}, {d("1/2"), 0}});
    for (int i = -30; i <= 30; ++i) {
        const Dyadic t = Dyadic(i * 11).mul_pow2(-3);
        const ComplexInterval F = jumpy.fourier(Interval(t), 30);
        const ref::Mp rt(t);
        const ref::Mp want = t.is_zero() ? ref::Mp(1) : ref::Mp(2) * ref::sin(rt / ref::Mp(2)) / rt;
        CHECK(ref::encloses(F.re, want));
        CHECK(ref::encloses(F.im, ref::Mp(0)));
        CHECK(F.width() <= Dyadic::pow2(-30));
    }
    const PiecewiseLinear odd({{d("-3/4"), 0}, {d("1/4"), 3}, {d("1/4"), 1}, {d("5/4"), d("-1/2")}, {d("9/4"), 0}});
    for (int i = -12; i <= 12; ++i) {
        const Dyadic t = Dyadic(i * 13).mul_pow2(-4);
        const ComplexInterval F = odd.fourier(Interval(t), 30);
        const auto [re, im] = simpson_fourier(odd, ref::Mp(t), 4000);
        CHECK(near(F.re, re, 1e-9));
        CHECK(near(F.im, im, 1e-9));
    }
}

TEST_CASE("Fourier enclosure over an interval of frequencies")
{
    const TestFunction w = make_w(1);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pos(-400, 400), len(1, 40);
    for (int i = 0; i < 300; ++i) {
        const Dyadic a = Dyadic(pos(rng)).mul_pow2(-5);
        const Dyadic b = a + Dyadic(len(rng)).mul_pow2(-7);
        const ComplexInterval F = w.pl().fourier(Interval(a, b), 20);
        for (int j = 0; j <= 4; ++j) {
            const Dyadic t = a + (b - a) * Dyadic(j).mul_pow2(-2);
            const ComplexInterval G = w.pl().fourier(Interval(t), 20);
            CHECK(F.contains(G));
        }
        const Dyadic bound = w.pl().fourier_bound(min(a.abs(), b.abs()), 20);
        if (!Interval(a, b).contains_zero())
            CHECK(F.re.mig() <= bound);
    }
}

TEST_CASE("restriction and scaling")
{
    const PiecewiseLinear r = make_w(1).pl().restricted(d("-1/2"), d("5/2"), Dyadic(2));
    CHECK(r.eval(Interval(0)) == Interval(2));
    CHECK(r.eval(Interval(d("3/2"))) == Interval(1));
    CHECK(r.eval(Interval(-1)) == Interval(0));
    CHECK(r.integral() == Dyadic(2) * (Dyadic(1) + d("3/2") - d("1/2") + d("1/2")) - Dyadic(2) * d("1/2") + Dyadic(0));
    CHECK(make_w(0).pl().restricted(Dyadic(3), Dyadic(4), Dyadic(1)).is_zero());
}

TEST_CASE("JSON round trip is bit exact")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> mant(-(1L << 40), 1L << 40);
    for (int i = 0; i < 50; ++i) {
        std::vector<Knot> ks;
        Dyadic x(mpz_class(mant(rng)), -20);
        ks.push_back({x, 0});
        for (int j = 0; j < 4; ++j) {
            x += Dyadic(mpz_class(::labs(mant(rng)) + 1), -30);
            ks.push_back({x, Dyadic(mpz_class(mant(rng)), -7 - j)});
        }
        x += Dyadic(1);
        ks.push_back({x, 0});
        const TestFunction f(ks);
        const auto j = to_json(f);
        CHECK(test_function_from_json(nlohmann::json::parse(j.dump())) == f);
    }
    const Dyadic huge(mpz_class("123456789012345678901234567890123"), -200);
    CHECK(dyadic_from_json(to_json(huge)) == huge);
    CHECK(to_json(make_w(0)).dump() == R"([[{"e":0,"m":-1},{"e":0,"m":0}],[{"e":0,"m":0},{"e":0,"m":1}],[{"e":0,"m":1},{"e":0,"m":0}]])");
    CHECK_THROWS_AS(test_function_from_json(nlohmann::json::parse("[[1,1],[2,0]]")), Error);
    CHECK_THROWS_AS(test_function_from_json(nlohmann::json::parse("{\"x\":1}")), Error);
}
