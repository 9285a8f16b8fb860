#pragma once

#include "effdist/quadrature.hpp"
#include "effdist/real.hpp"
#include "effdist/test_functions.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace effdist {

struct Atom {
    Real position;
    Real weight;
};
using AtomList = std::vector<Atom>;

enum class DistKind { point_mass, finite_discrete, density, bochner };

/// A probability measure mu, known through its windowed expectations
/// mu(f(x) e^{itx}) for piecewise-linear test functions f.
class DistOracle {
public:
    /// Called with a point t only.
    using Window = std::function<ComplexInterval(const TestFunction& f, const Dyadic& t, std::int64_t k)>;

    struct Info {
        DistKind kind = DistKind::point_mass;
        std::optional<Real> point;                 // point_mass
        std::shared_ptr<const AtomList> atoms;     // finite_discrete
        std::optional<Integrand> density;          // density
        std::string label;
    };

    DistOracle(Info info, Window w) : info_(std::move(info)), window_(std::move(w)) {}

    /// Enclosure of mu(f e^{itx}). For a point t the width is <= 2^-k per
    /// component; an interval t is handled at its midpoint and widened by
    /// rad(t) * L * M_f, which bounds the variation of t -> mu(f e^{itx}).
    ComplexInterval windowed_eval(const TestFunction& f, const Interval& t, std::int64_t k) const;
    /// Same for a computable t, width <= 2^-k.
    ComplexInterval windowed_eval(const TestFunction& f, const Real& t, std::int64_t k) const;

    DistKind kind() const { return info_.kind; }
    const Info& info() const { return info_; }

private:
    Info info_;
    Window window_;
};

DistOracle point_mass(const Real& a);
/// Throws invalid-weights if a weight is certified negative or the weight sum excludes 1.
DistOracle finite_discrete(AtomList atoms);
/// sum_l C(m,l) p^l q^{m-l} delta_l
DistOracle binomial(unsigned m, const Real& p);
/// Measure d(x) dx; d needs an envelope. Throws not-normalized if the
/// integral of d excludes 1.
DistOracle density_dist(Integrand d);
/// Uniform density on [lo, hi]; expectations use the exact Fourier transform
/// of the piecewise-linear window.
DistOracle uniform(const Dyadic& lo, const Dyadic& hi);

/// Smallest n with the certified lower bound of mu(w_n) above 1 - 2^-k.
/// Evaluates at precision k+2, refining by 2 bits while the enclosure
/// straddles the threshold. Throws budget-exhausted past Limits::max_tightness.
std::int64_t tightness(const DistOracle& mu, std::int64_t k);

/// Witness of effective convergence mu_m -> mu: for m >= modulus(n, k),
/// |mu_m(w_n) - mu(w_n)| < 2^-k.
struct DistConvergence {
    std::function<DistOracle(std::int64_t m)> sequence;
    std::shared_ptr<const DistOracle> limit;
    std::function<std::int64_t(std::int64_t n, std::int64_t k)> modulus;
    std::int64_t first = 1; // index of the first term
};

/// alpha(k) = max{L(k+1), L(m, k+1) : first <= m < gamma(L(k+1), k+1)}; then
/// mu(w_a^c) < 2^-k and mu_m(w_a^c) < 2^-k for every m.
std::int64_t seq_tightness(const DistConvergence& cert, std::int64_t k);

/// {"kind": "point_mass", "a": r}
/// {"kind": "finite_discrete", "atoms": [[x, w], ...]}
/// {"kind": "density_uniform", "lo": d, "hi": d}   (or "a": d for [-a, a])
/// {"kind": "binomial", "m": n, "p": r}
/// Reals are strings for Real::parse, JSON integers or {"m","e"} objects.
DistOracle distribution_from_json(const nlohmann::json& j);

} // namespace effdist
