#pragma once

#include "effdist/distributions.hpp"
#include "effdist/real.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace effdist {

/// A characteristic function phi, evaluated pointwise with a modulus of
/// uniform continuity. unit_at_zero and pos_def are asserted by whoever
/// builds the oracle; neither is verified.
class CharOracle {
public:
    /// Enclosure of phi(t) for a point t, width <= 2^-k per component.
    using Eval = std::function<ComplexInterval(const Dyadic& t, std::int64_t k)>;
    /// beta(k): |t - s| < 2^-beta implies |phi(t) - phi(s)| < 2^-k.
    using Modulus = std::function<std::int64_t(std::int64_t k)>;
    /// Optional enclosure of phi' over an interval t, rounding error about 2^-p.
    /// Lets quadratures over phi use the second-order mean-value rule.
    using Deriv = std::function<ComplexInterval(const Interval& t, std::int64_t p)>;
    /// Optional direct enclosure of phi over an interval t, rounding error
    /// about 2^-k; sharper than going through the modulus.
    using IntervalEval = std::function<ComplexInterval(const Interval& t, std::int64_t k)>;

    CharOracle(Eval e, Modulus m, std::string label = {}, bool unit_at_zero = true, bool pos_def = true)
        : eval_(std::move(e)), modulus_(std::move(m)), label_(std::move(label)), unit_at_zero_(unit_at_zero),
          pos_def_(pos_def)
    {
    }

    ComplexInterval eval(const Dyadic& t, std::int64_t k) const { return eval_(t, k); }
    /// For a non-point t: the interval evaluator when there is one, else the
    /// value at the midpoint widened through the modulus (by 2 when t is too
    /// wide for any 2^-j with j >= 0).
    ComplexInterval eval(const Interval& t, std::int64_t k) const;
    /// Computable t, width <= 2^-k.
    ComplexInterval eval(const Real& t, std::int64_t k) const;
    std::int64_t modulus(std::int64_t k) const { return modulus_(k); }

    CharOracle& with_deriv(Deriv d)
    {
        deriv_ = std::move(d);
        return *this;
    }
    CharOracle& with_interval_eval(IntervalEval e)
    {
        ieval_ = std::move(e);
        return *this;
    }
    bool has_deriv() const { return static_cast<bool>(deriv_); }
    ComplexInterval deriv(const Interval& t, std::int64_t p) const { return deriv_(t, p); }

    const std::string& label() const { return label_; }
    bool unit_at_zero() const { return unit_at_zero_; }
    bool pos_def() const { return pos_def_; }

private:
    Eval eval_;
    Modulus modulus_;
    Deriv deriv_;
    IntervalEval ieval_;
    std::string label_;
    bool unit_at_zero_;
    bool pos_def_;
};

/// phi(t) = mu(e^{itx}). eval(t, k) uses L = tightness(mu, k+2):
/// mu(w_L e^{itx}) at 2^-(k+2) plus a tail box of radius 2^-(k+2), since
/// |mu(w_L^c e^{itx})| <= mu(w_L^c) < 2^-(k+2). modulus(k) is the smallest
/// beta with 2^-beta < 1 / ((L(k+2) + 1) 2^(k+2)).
CharOracle char_from_dist(const DistOracle& mu);

/// Smallest beta >= 0 with lip * 2^-beta < 2^-k (0 when lip = 0).
std::int64_t lipschitz_modulus(const Dyadic& lip, std::int64_t k);

CharOracle char_constant_one();
/// sin(a t) / (a t), the uniform distribution on [-a, a].
CharOracle char_sinc_uniform(const Dyadic& a);
/// e^{-t^2/2}
CharOracle char_gaussian();
/// cos t, the measure (delta_{-1} + delta_1) / 2.
CharOracle char_cos();
/// (p e^{it} + q)^m
CharOracle char_binomial(unsigned m, const Real& p);

/// Witness of effective convergence phi_m -> phi uniformly on compacts:
/// m >= modulus(M, k) implies |phi_m(t) - phi(t)| < 2^-k for |t| <= M.
struct CharConvergence {
    std::function<CharOracle(std::int64_t m)> sequence;
    std::shared_ptr<const CharOracle> limit;
    std::function<std::int64_t(std::int64_t M, std::int64_t k)> modulus;
};

/// beta(k) valid for every phi_m and phi: the char_from_dist modulus with
/// L = seq_tightness(cert, k+2).
std::int64_t equicont_modulus(const DistConvergence& cert, std::int64_t k);

/// eta(M, k) = max over the grid t_j = -M + j 2^-beta(k), 0 <= j <= 2M 2^beta(k),
/// of exp_modulus(t_j, beta(k)). For m >= eta and |t| <= M,
/// |phi_m(t) - phi(t)| < 3 2^-k. exp_modulus(t, k) must give a threshold
/// past which |mu_m(e^{itx}) - mu(e^{itx})| < 2^-k.
/// Throws grid-budget-exceeded when the grid exceeds Limits::max_grid.
std::int64_t levy_transfer(const DistConvergence& cert,
                           const std::function<std::int64_t(const Dyadic& t, std::int64_t k)>& exp_modulus,
                           std::int64_t M, std::int64_t k);

/// Number of grid points used by levy_transfer for a given beta.
std::uint64_t levy_grid_size(std::int64_t M, std::int64_t beta);

} // namespace effdist
