#pragma once

#include "effdist/interval.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace effdist {

struct Knot {
    Dyadic x;
    Dyadic y;
    friend bool operator==(const Knot&, const Knot&) = default;
};

/// Piecewise-linear function given by knots with nondecreasing x, zero
/// outside [first.x, last.x]. A repeated x marks a jump (left value, then
/// right value); each x may appear at most twice.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    explicit PiecewiseLinear(std::vector<Knot> knots);

    const std::vector<Knot>& knots() const { return knots_; }
    bool is_zero() const { return knots_.empty(); }
    Dyadic support_lo() const { return is_zero() ? Dyadic() : knots_.front().x; }
    Dyadic support_hi() const { return is_zero() ? Dyadic() : knots_.back().x; }

    /// Enclosure of f over x; interpolated values are rounded outward at 2^-p.
    Interval eval(const Interval& x, std::int64_t p = 96) const;

    /// Enclosure of f' over x (a.e. derivative; meaningful for continuous f).
    Interval slope(const Interval& x, std::int64_t p = 96) const;

    Dyadic sup_norm() const;
    /// Exact integral of f.
    Dyadic integral() const;
    /// Upper bound of the integral of |f| (exact unless a segment changes sign).
    Dyadic l1_upper() const;
    /// Upper bound on the total variation of the slope, jumps at the ends included.
    Dyadic slope_variation_upper() const;
    /// Sum of |jumps|, the drop to zero at the ends included.
    Dyadic jump_total() const;

    /// Fourier transform F(t) = integral of f(x) e^{itx} dx. For point t the
    /// width is at most 2^-p; interval t adds the variation of F over t.
    ComplexInterval fourier(const Interval& t, std::int64_t p) const;
    /// F and F' over t from the kink form, when |t| span > 2 on all of t;
    /// nullopt otherwise.
    std::optional<std::pair<ComplexInterval, ComplexInterval>> fourier_and_deriv(const Interval& t, std::int64_t p) const;
    /// Upper bound of |F(t)| for |t| >= tmin > 0: jumps/|t| + variation/t^2, capped by the L1 norm.
    Dyadic fourier_bound(const Dyadic& tmin, std::int64_t p) const;

    /// scale * f restricted to [a, b] (jumps introduced at a and b).
    PiecewiseLinear restricted(const Dyadic& a, const Dyadic& b, const Dyadic& scale) const;

    friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;

private:
    Interval value_at(const Dyadic& x, std::int64_t p) const;
    ComplexInterval fourier_segments(const Interval& t, std::int64_t p) const;
    ComplexInterval fourier_knots(const Interval& t, std::int64_t p) const;

    // jump J and slope change ds at each distinct abscissa with either nonzero
    struct Kink {
        Dyadic x;
        Dyadic jump;
        mpq_class ds;
        std::optional<Dyadic> ds_exact; // when ds is dyadic
        friend bool operator==(const Kink&, const Kink&) = default;
    };
    Interval kink_slope(const Kink& k, std::int64_t p) const;
    std::int64_t kink_bits() const { return kink_bits_; }

    std::vector<Knot> knots_;
    std::vector<mpq_class> slopes_; // slope of segment i (knot i to i+1), 0 for jumps
    std::vector<Kink> kinks_;
    std::int64_t kink_bits_ = 0; // extra precision for the kink form
};

/// Continuous compactly supported piecewise-linear test function.
class TestFunction {
public:
    TestFunction() = default;
    /// Knots with strictly increasing x and zero at both ends.
    explicit TestFunction(std::vector<Knot> knots);

    const std::vector<Knot>& knots() const { return pl_.knots(); }
    const PiecewiseLinear& pl() const { return pl_; }
    bool is_zero() const { return pl_.is_zero() || sup_.is_zero(); }
    Dyadic support_lo() const { return pl_.support_lo(); }
    Dyadic support_hi() const { return pl_.support_hi(); }
    /// L with f = 0 outside [-L, L].
    Dyadic support_bound() const { return max(support_lo().abs(), support_hi().abs()); }
    /// Upper bound of the largest |slope| (exact when slopes are dyadic).
    const Dyadic& lip() const { return lip_; }
    /// M_f = max |f|.
    const Dyadic& sup_norm() const { return sup_; }
    Dyadic l1_upper() const { return pl_.l1_upper(); }

    Interval eval(const Interval& x) const { return pl_.eval(x); }

    friend bool operator==(const TestFunction& a, const TestFunction& b) { return a.pl_ == b.pl_; }

private:
    PiecewiseLinear pl_;
    Dyadic lip_;
    Dyadic sup_;
};

/// Trapezoid: 1 on [-n, n], 0 outside [-n-1, n+1].
TestFunction make_w(unsigned n);

Interval eval_tf(const TestFunction& f, const Interval& x);

/// Smallest alpha with lip * 2^-alpha < 2^-k; 0 for constant functions.
std::int64_t modulus_tf(const TestFunction& f, std::int64_t k);

/// 1 - f; used for the tails w_n^c, which lack compact support.
struct ComplementFunction {
    TestFunction base;
    Interval eval(const Interval& x) const { return Interval(1) - base.eval(x); }
};

inline ComplementFunction make_wc(unsigned n) { return {make_w(n)}; }

} // namespace effdist
