#pragma once

#include "effdist/distributions.hpp"
#include "effdist/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace effdist {

/// Binary function F(x, y), integrated in y.
struct Kernel {
    std::function<ComplexInterval(const Interval& x, const Interval& y, std::int64_t p)> eval;
    /// Optional enclosure of dF/dy, used by the quadrature.
    std::function<ComplexInterval(const Interval& x, const Interval& y, std::int64_t p)> deriv_y;
    /// Dominating function in y, uniform in x (Lebesgue case).
    std::optional<Envelope> envelope;
    /// |F| <= bound everywhere (measure case).
    Dyadic bound;
    /// alpha(H, k): |x|, |x'|, |y|, |y'| <= H and |x - x'|, |y - y'| < 2^-alpha
    /// imply |F(x, y) - F(x', y')| < 2^-k.
    std::function<std::int64_t(std::int64_t H, std::int64_t k)> modulus;
};

struct Lebesgue {};

/// Encloses the integral of F(x, y) dy, width <= 2^-k; x must be a point.
ComplexInterval kernel_eval(const Kernel& F, const Interval& x, Lebesgue, std::int64_t k);
/// Encloses the integral of F(x, y) mu(dy). Width <= 2^-k for a point x.
/// Supports point masses, finite discrete measures and densities.
ComplexInterval kernel_eval(const Kernel& F, const Interval& x, const DistOracle& mu, std::int64_t k);

/// Step exponent for x -> integral of F(x, y) mu(dy) on |x| <= H: with
/// k' = k + 2M + 3 (M = ceil(bound)) and l = max(H, L(k')), returns
/// alpha(l + 1, k'). The tail beyond w_l costs 2M 2^-k', the core 2^-k'.
std::int64_t kernel_modulus(const Kernel& F, const DistOracle& mu, std::int64_t H, std::int64_t k);
/// Same for dy: the envelope tail beyond T = tail_cutoff(k+2) costs 2^-(k+1)
/// and the core is controlled by alpha(max(H, T + 1), k + 2 + log2(2T + 2)).
std::int64_t kernel_modulus(const Kernel& F, Lebesgue, std::int64_t H, std::int64_t k);

} // namespace effdist
