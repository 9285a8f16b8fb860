#pragma once

#include "effdist/interval.hpp"

#include <cstdint>
#include <utility>

namespace effdist {

// Rigorous elementary functions on intervals.
//
// Each function returns an interval enclosing the exact image of its argument.
// The precision argument p bounds the extra width caused by series truncation
// and internal rounding by 2^-p; the image of a non-degenerate argument adds
// its own width on top of that. Working precision is raised internally as
// needed and capped by Limits::max_working_bits (precision-overflow).

Interval pi(std::int64_t p);
Interval ln2(std::int64_t p);

Interval exp(const Interval& x, std::int64_t p);
Interval sin(const Interval& x, std::int64_t p);
Interval cos(const Interval& x, std::int64_t p);
/// {cos x, sin x} sharing one argument reduction.
std::pair<Interval, Interval> cos_sin(const Interval& x, std::int64_t p);
/// e^{i theta} = cos theta + i sin theta.
ComplexInterval cis(const Interval& theta, std::int64_t p);
/// e^{-x^2/2}
Interval exp_neg_sq_half(const Interval& x, std::int64_t p);
/// sin(x)/x with the removable singularity filled in.
Interval sinc(const Interval& x, std::int64_t p);
/// d/dx sinc(x) = (cos x - sinc x) / x, with value 0 at 0.
Interval sinc_deriv(const Interval& x, std::int64_t p);
/// Natural logarithm; x must be positive.
Interval log(const Interval& x, std::int64_t p);
Interval atan(const Interval& x, std::int64_t p);

enum class ElemFn { exp, sin, cos, exp_neg_sq_half };

/// Dispatcher over the elementary family.
Interval iv_elem(ElemFn fn, const Interval& a, std::int64_t k);

} // namespace effdist
