#pragma once

#include "effdist/interval.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace effdist {

/// Dominating function for an integrand: |f(x)| is bounded by every component
/// that is present.
struct Envelope {
    struct Gaussian {
        Dyadic sigma2; // scale * exp(-x^2 / (2 sigma2))
        Dyadic scale;
    };
    struct Compact {
        Dyadic bound; // |f| <= bound on [-radius, radius], 0 outside
        Dyadic radius;
    };
    struct InverseSquare {
        Dyadic coeff; // |f(x)| <= coeff / x^2 for |x| >= from
        Dyadic from;
    };
    std::optional<Gaussian> gaussian;
    std::optional<Compact> compact;
    std::optional<InverseSquare> inverse_square;

    static Envelope make_gaussian(const Dyadic& sigma2, const Dyadic& scale);
    static Envelope make_compact(const Dyadic& bound, const Dyadic& radius);
    static Envelope make_inverse_square(const Dyadic& coeff, const Dyadic& from);
    bool empty() const { return !gaussian && !compact && !inverse_square; }

    /// Certified upper bound of the envelope over x, rounded at 2^-p.
    Dyadic upper(const Interval& x, std::int64_t p) const;
    /// Certified upper bound of the integral of the envelope over |x| > m.
    Dyadic tail_upper(std::int64_t m, std::int64_t p) const;
};

/// Complex-valued integrand given by an enclosure oracle.
struct Integrand {
    /// Enclosure of f over the interval x; rounding error at most about 2^-p.
    std::function<ComplexInterval(const Interval& x, std::int64_t p)> eval;
    /// Optional Lipschitz bound on [a, b]; only used to size the first partition.
    std::function<Dyadic(const Dyadic& a, const Dyadic& b)> lip_on;
    /// Optional enclosure of f' over x. When present each cell uses the
    /// mean-value form h f(mid) + h^2/8 [-w, w], w the width of f'(cell).
    std::function<ComplexInterval(const Interval& x, std::int64_t p)> deriv;
    std::optional<Envelope> envelope;
};

/// Encloses the integral of f over [a, b] with width <= 2^-k per component.
/// Cells are bisected where their contribution to the width is largest; the
/// final sum runs left to right, so the result is independent of evaluation order.
ComplexInterval integrate_finite(const Integrand& f, const Dyadic& a, const Dyadic& b, std::int64_t k);

/// Smallest m with the envelope tail over |x| > m certified below 2^-k.
/// A compact envelope gives ceil(radius), where the tail vanishes.
std::int64_t tail_cutoff(const Integrand& f, std::int64_t k);

/// Encloses the integral of f over the real line, width <= 2^-k.
ComplexInterval integrate_R(const Integrand& f, std::int64_t k);

/// Wraps a real-valued enclosure as an integrand with zero imaginary part.
Integrand real_integrand(std::function<Interval(const Interval& x, std::int64_t p)> g);
/// Same, with an enclosure of g' for the mean-value form.
Integrand real_integrand(std::function<Interval(const Interval& x, std::int64_t p)> g,
                         std::function<Interval(const Interval& x, std::int64_t p)> dg);

} // namespace effdist
