#pragma once

#include "effdist/charfun.hpp"
#include "effdist/real.hpp"

#include <cstdint>
#include <optional>

namespace effdist {

/// Success probability p with 0 < p < 1 certified; q = 1 - p.
class BernoulliParams {
public:
    explicit BernoulliParams(Real p);
    const Real& p() const { return p_; }
    Interval p_at(std::int64_t k) const { return p_.at(static_cast<int>(k)); }

private:
    Real p_;
};

/// psi_m(t) = E e^{itY_m} = (p e^{it sqrt(q/(mp))} + q e^{-it sqrt(p/(mq))})^m,
/// Y_m the standardized binomial. Width <= 2^-k.
ComplexInterval std_binomial_char(const BernoulliParams& params, std::uint64_t m, const Dyadic& t, std::int64_t k);
/// psi_m as a characteristic-function oracle (E|Y_m| <= 1 gives the modulus).
CharOracle char_binomial_std(const BernoulliParams& params, std::uint64_t m);

/// [|t|_min^n / n!, |t|_max^n / n!]; hi is the certified bound on |R_n(t)|.
Interval remainder_bound(unsigned n, const Interval& t);

struct DmlBound {
    Dyadic K;
    std::uint64_t m = 0;
    Interval main_term;   // K^3 ((q/p)^{3/2} + (p/q)^{3/2}) / sqrt m
    Interval bracket;     // K^2/(2m) + K^3 (q/(mp))^{3/2} + K^3 (p/(mq))^{3/2}
    Interval square_term; // m * bracket^2
    Interval total;
    bool valid = false;   // bracket < 1/2 certified
};

/// Bound on sup over |t| <= K of |log psi_m(t) + t^2/2|, evaluated at |t| = K.
/// log psi_m = m log(1 + z) with |z| <= bracket, so the quadratic part of
/// log(1 + z) - z contributes m |z|^2.
DmlBound dml_error_bound(const BernoulliParams& params, const Dyadic& K, std::uint64_t m, std::int64_t k);

/// Smallest power of two m with a valid bound whose total is < 2^-k.
/// Throws budget-exhausted past 2^62.
std::uint64_t dml_modulus(const BernoulliParams& params, const Dyadic& K, std::int64_t k);

/// e^{-t^2/2}, width <= 2^-k.
Interval gaussian_char(const Dyadic& t, std::int64_t k);

/// Principal logarithm log|z| + i arg z. Returns nothing unless Re z > 0 is
/// certified, which keeps the enclosure away from the branch cut.
std::optional<ComplexInterval> principal_log(const ComplexInterval& z, std::int64_t p);

} // namespace effdist
