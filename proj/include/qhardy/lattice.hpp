#pragma once

// Evaluation oracles on the q-lattice and the extremal power families used
// by the sharpness sweeps.

#include <cmath>
#include <functional>
#include <optional>

#include "qhardy/core.hpp"

namespace qhardy {

enum class Positivity { nonneg, strictly_positive, unrestricted };
enum class SupportHint { all, unit_interval, tail_interval };

/// A function known through samples at lattice points t = x q^k. The plain
/// evaluator covers sign-generic, moderate-depth use; the optional log
/// evaluator (ln t -> ln f(t), -inf where f vanishes) lets the norm
/// functionals walk arbitrarily deep into the lattice, where t itself
/// leaves double range. Both must be reentrant.
struct LatticeFunction {
    std::function<double(double)> evaluator;
    std::function<double(double)> log_evaluator;
    Positivity positivity = Positivity::unrestricted;
    SupportHint support = SupportHint::all;

    double sample(double t) const {
        const double v = evaluator(t);
        if (!std::isfinite(v)) throw EvaluationError("lattice sample is not finite");
        if (positivity == Positivity::strictly_positive && !(v > 0.0))
            throw EvaluationError("strictly-positive oracle returned a nonpositive sample");
        if (positivity == Positivity::nonneg && v < 0.0)
            throw EvaluationError("nonnegative oracle returned a negative sample");
        return v;
    }

    /// ln f(t) at ln t. NaN is rejected; -inf means f(t) = 0.
    double log_sample(double log_t) const {
        double lv;
        if (log_evaluator) {
            lv = log_evaluator(log_t);
        } else {
            if (std::abs(log_t) > 700.0)
                throw EvaluationError(
                    "lattice point beyond double range; the function needs a log evaluator");
            const double v = sample(std::exp(log_t));
            if (v < 0.0)
                throw DomainError("log-space sampling requires a nonnegative function");
            lv = v > 0.0 ? std::log(v) : detail::kNegInf;
        }
        if (std::isnan(lv)) throw EvaluationError("log-space lattice sample is NaN");
        if (positivity == Positivity::strictly_positive && lv == detail::kNegInf)
            throw EvaluationError("strictly-positive oracle returned a zero sample");
        return lv;
    }

    bool has_log() const { return static_cast<bool>(log_evaluator); }
};

enum class FamilyKind {
    power_unit,    ///< t^beta on (0,1], zero beyond
    power_tail,    ///< t^beta on [1,inf), zero below
    power_two,     ///< t^beta1 on (0,1], t^beta2 on (1,inf)
    power_plain    ///< t^beta everywhere
};

/// Parameters of an extremal test family. The support cutoff sits exactly on
/// the lattice: points t = q^k with k >= 0 belong to (0,1], k < 0 to (1,inf).
struct ExtremalFamily {
    FamilyKind kind = FamilyKind::power_unit;
    double beta = 0.0;
    std::optional<double> beta2;
};

inline LatticeFunction make_extremal(const ExtremalFamily& fam) {
    if (!std::isfinite(fam.beta) || (fam.beta2 && !std::isfinite(*fam.beta2)))
        throw ParameterError("extremal family parameters must be finite");
    const double b = fam.beta;
    LatticeFunction f;
    switch (fam.kind) {
        case FamilyKind::power_unit:
            f.evaluator = [b](double t) { return t <= 1.0 ? std::pow(t, b) : 0.0; };
            f.log_evaluator = [b](double lt) { return lt <= 0.0 ? b * lt : detail::kNegInf; };
            f.positivity = Positivity::nonneg;
            f.support = SupportHint::unit_interval;
            break;
        case FamilyKind::power_tail:
            f.evaluator = [b](double t) { return t >= 1.0 ? std::pow(t, b) : 0.0; };
            f.log_evaluator = [b](double lt) { return lt >= 0.0 ? b * lt : detail::kNegInf; };
            f.positivity = Positivity::nonneg;
            f.support = SupportHint::tail_interval;
            break;
        case FamilyKind::power_two: {
            if (!fam.beta2) throw ParameterError("power_two family needs beta2");
            const double b2 = *fam.beta2;
            f.evaluator = [b, b2](double t) { return std::pow(t, t <= 1.0 ? b : b2); };
            f.log_evaluator = [b, b2](double lt) { return (lt <= 0.0 ? b : b2) * lt; };
            f.positivity = Positivity::strictly_positive;
            f.support = SupportHint::all;
            break;
        }
        case FamilyKind::power_plain:
            f.evaluator = [b](double t) { return std::pow(t, b); };
            f.log_evaluator = [b](double lt) { return b * lt; };
            f.positivity = Positivity::strictly_positive;
            f.support = SupportHint::all;
            break;
    }
    return f;
}

/// Wrap a plain callable as an unrestricted lattice function.
template <class F>
LatticeFunction lattice_fn(F&& fn, Positivity pos = Positivity::unrestricted,
                           SupportHint hint = SupportHint::all) {
    LatticeFunction f;
    f.evaluator = std::forward<F>(fn);
    f.positivity = pos;
    f.support = hint;
    return f;
}

}   // namespace qhardy
