#pragma once

#include "effdist/interval.hpp"

#include <functional>
#include <string_view>

namespace effdist {

/// A computable real: for each k an interval of width <= 2^-k containing it.
/// Answers for different k need not be nested but always intersect.
class Real {
public:
    using Oracle = std::function<Interval(int k)>;

    Real() : Real(exact(Dyadic())) {}
    explicit Real(Oracle f) : eval_(std::move(f)) {}

    static Real exact(const Dyadic& d);
    /// num / den for integers, den != 0.
    static Real ratio(const mpz_class& num, const mpz_class& den);
    /// Nonnegative square root by bisection on x^2 = a.
    static Real sqrt_of(const Dyadic& a);
    static Real pi();
    /// "m/2^e", integers, or "a/b" for any nonzero integer b.
    static Real parse(std::string_view text);

    /// Enclosure of width <= 2^-k. Throws if the oracle breaks its contract.
    Interval at(int k) const;

    Real operator-() const;
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b) { return a + (-b); }

private:
    Oracle eval_;
};

inline Interval real_at(const Real& r, int k) { return r.at(k); }

} // namespace effdist
