#pragma once

#include "effdist/charfun.hpp"
#include "effdist/distributions.hpp"
#include "effdist/quadrature.hpp"
#include "effdist/test_functions.hpp"

#include <cstdint>

namespace effdist {

/// Gaussian smoothing h_n(x) = E f(x + Z / sqrt n), Z standard normal.
/// 2 M_f e^{-L^2/2} < 2^-(k+1) and n > L^2 2^(2 alpha(k+1)) give
/// sup |h_n - f| < 2^-k.
struct SmoothingPlan {
    std::int64_t L = 0;
    std::uint64_t n = 1;
    std::int64_t k_target = 0;
};

/// Minimal L, and n = L^2 2^(2 modulus_tf(f, k+1)) + 1. The zero function gets L = 0, n = 1.
/// Throws precision-overflow when n does not fit in 64 bits.
SmoothingPlan smoothing_params(const TestFunction& f, std::int64_t k);

/// g_n(z) = (1/2pi) e^{-z^2/2n} int e^{-izy} f(y) dy, so that
/// h_n(x) = int g_n(z) e^{izx} dz. Width <= 2^-k for a point z; an interval z
/// adds the variation of g_n over it.
ComplexInterval fourier_weight(const TestFunction& f, std::uint64_t n, const Interval& z, std::int64_t k);

/// |g_n(z)| <= (1/2pi) ||f||_1 e^{-z^2/2n}, and <= (1/2pi) V / z^2 for |z| >= 1
/// where V bounds the variation of f'.
Envelope fourier_weight_envelope(const TestFunction& f, std::uint64_t n);

/// Upper bound of the L1 norm of g_n.
Dyadic fourier_weight_l1(const TestFunction& f, std::uint64_t n);

/// mu(h_n) = int phi(z) g_n(z) dz, width <= 2^-k.
ComplexInterval smoothed_expectation(const CharOracle& phi, const TestFunction& f, std::uint64_t n, std::int64_t k);

/// mu(f) for the distribution mu with characteristic function phi:
/// mu(h_n) at 2^-(k+1) with the plan for k+1, widened by the smoothing error.
/// Width <= 3 2^-(k+1). Throws imaginary-residual when the imaginary part
/// of mu(h_n) is certified nonzero.
Interval glivenko_eval(const CharOracle& phi, const TestFunction& f, std::int64_t k);

/// m-threshold past which |mu_m(f) - mu(f)| < 2^-k, from a certificate of
/// phi_m -> phi on compacts: plan for k+2, cutoff T with the g_n tail below
/// 2^-(k+3), then cert.modulus(T, k + 3 + ceil(log2 ||g_n||_1)).
std::int64_t glivenko_modulus(const CharConvergence& cert, const TestFunction& f, std::int64_t k);

/// psi_n(t) = phi(t) e^{-t^2/n} -> phi, with modulus(M, k) = M^2 2^k + 1
/// from |psi_n - phi| <= t^2 / n. The sequence starts at n = 1.
CharConvergence damped_cert(const CharOracle& phi);

/// f_n(x) = (1/2pi) int phi(t) e^{-t^2/n} e^{-ixt} dt, the density of
/// mu * N(0, 2/n). Width <= 2^-k. Throws imaginary-residual or
/// negativity-violation when phi cannot be a characteristic function.
Interval bochner_density(const CharOracle& phi, std::uint64_t n, const Interval& x, std::int64_t k);

/// int_{-X}^{X} f_n(x) dx = (1/pi) int phi(t) e^{-t^2/n} sin(Xt)/t dt, width <= 2^-k.
Interval bochner_mass(const CharOracle& phi, std::uint64_t n, const Dyadic& X, std::int64_t k);

/// Upper bound of the f_n mass outside [-2/u, 2/u], from the truncation
/// inequality nu(|x| > 2/u) <= (1/u) int_{-u}^{u} (1 - psi_n(t)) dt.
Dyadic bochner_tail(const CharOracle& phi, std::uint64_t n, const Dyadic& u, std::int64_t k);

struct BochnerMass {
    Interval core;   // mass of [-X, X]
    Dyadic tail;     // bound on the mass outside
    Dyadic X;
    Interval total() const { return Interval(core.lo, core.hi + tail); }
};

/// Core mass plus tail bound with the tail below 2^-(k+1) and the core
/// at 2^-(k+1); total() then has width <= 2^-k and contains 1.
BochnerMass bochner_normalization(const CharOracle& phi, std::uint64_t n, std::int64_t k);

/// The distribution with characteristic function phi. A window at (f, t, k)
/// evaluates nu_n(f e^{it.}) = (1/2pi) int psi_n(s) F(t - s) ds, F the Fourier
/// transform of f, where nu_n = mu * N(0, 2/n) and n is large enough that
/// (lip_f + |t| M_f) E|N(0, 2/n)| < 2^-(k+2).
DistOracle bochner_dist(const CharOracle& phi);

} // namespace effdist
