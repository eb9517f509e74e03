#pragma once

// Numerical policy, truncated-series carriers and the shared summation
// engine used by every q-series and q-product in the library.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace qhardy {

/// Base exception for all library failures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A truncated series/product did not satisfy the stopping rule.
class NonConvergentError : public Error {
public:
    using Error::Error;
};

/// Input outside the operation's contract (sign, range, support).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a pole of Gamma_q.
class PoleError : public Error {
public:
    using Error::Error;
};

/// A normalizing product or partial sum vanished.
class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// Case or configuration parameters outside the admissible window.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A lattice sample came back non-finite or violated its positivity flag.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Base q of the lattice plus the numerical truncation policy shared by all
/// series and products: a tail stops once `consecutive_small` successive
/// terms fall below eps_tail relative to the partial sum, and the dropped
/// remainder is bounded by geometric extrapolation of the last term ratio.
struct QParams {
    double q;                        ///< lattice base, strictly inside (0,1)
    double eps_tail = 1e-14;         ///< relative tail tolerance
    long k_max = 100000;             ///< max lattice index magnitude per tail
    long n_max_product = 100000;     ///< max factors in infinite products
    int consecutive_small = 5;       ///< negligible terms required to stop

    void validate() const {
        if (!(q > 0.0) || !(q < 1.0) || !std::isfinite(q))
            throw ParameterError("q must lie in (0,1)");
        if (!(eps_tail > 0.0)) throw ParameterError("eps_tail must be positive");
        if (k_max < 1) throw ParameterError("k_max must be >= 1");
        if (n_max_product < 1) throw ParameterError("n_max_product must be >= 1");
        if (consecutive_small < 1) throw ParameterError("consecutive_small must be >= 1");
    }

    double log_q() const { return std::log(q); }
};

/// Value of a truncated series/product together with an estimate of the
/// dropped tail. A result with converged == false must never be used
/// silently; call require() to enforce that.
struct SeriesResult {
    double value = 0.0;
    double abs_error = 0.0;
    long terms_used = 0;
    bool converged = true;
    std::string note;   ///< diagnostic when converged is false

    double require() const {
        if (!converged)
            throw NonConvergentError(note.empty() ? "series did not converge" : note);
        return value;
    }
};

namespace detail {

inline constexpr double kTinyFloor = 1e-300;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// Neumaier compensated accumulator.
struct NeumaierSum {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }

    double get() const { return s + c; }
};

inline double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = a > b ? a : b;
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

/// Online log-sum-exp accumulator for nonnegative-term sums kept in logs.
struct LogSumExp {
    double max = kNegInf;
    double sum = 0.0;   // sum of exp(x - max)

    void add(double x) {
        if (x == kNegInf) return;
        if (x <= max) {
            sum += std::exp(x - max);
        } else {
            sum = (max == kNegInf) ? 1.0 : sum * std::exp(max - x) + 1.0;
            max = x;
        }
    }

    double log() const {
        if (max == kNegInf || sum == 0.0) return kNegInf;
        return max + std::log(sum);
    }
};

/// How far an all-zero prefix may run before the series is accepted as zero.
/// Support cutoffs of lattice functions sit within a few steps of t = 1, so
/// this never truncates an in-contract integrand.
inline long zero_run_limit(const QParams& p) {
    const long by_q = static_cast<long>(std::ceil(8.0 / (1.0 - p.q)));
    return by_q > 64 ? by_q : 64;
}

/// Shared one-sided summation engine. `term(k)` is called once per index in
/// ascending order, k = 0,1,2,... The uniform stopping rule: after
/// `consecutive_small` successive terms with |term| < eps_tail * max(|sum|,
/// tiny floor), stop and bound the remainder by geometric extrapolation of
/// the observed term ratio. With `divergence_probe` the engine also fails
/// fast when term magnitudes are nondecreasing over `consecutive_small`
/// successive probes (used on the t -> infinity tail). The probe starts
/// after a q-scaled burn-in: support-entry transients legitimately ramp up
/// over a bounded prefix, while genuine divergence persists past it.
template <class Term>
SeriesResult sum_series(Term&& term, const QParams& p, bool divergence_probe = false) {
    NeumaierSum acc;
    SeriesResult r;
    int small_run = 0;
    int grow_run = 0;
    long zero_run = 0;
    bool any_nonzero = false;
    double prev_abs = -1.0;          // |previous term|, -1 before first
    double last_nonzero = 0.0;       // |last nonzero term|
    double last_ratio = -1.0;        // ratio of last adjacent nonzero pair
    const long zlimit = zero_run_limit(p);
    const long probe_burn_in = zlimit;

    auto tail_estimate = [&](double final_abs) {
        if (final_abs == 0.0) return 0.0;
        double rho = (last_ratio > 0.0 && last_ratio < 0.999) ? last_ratio : 0.999;
        return final_abs * rho / (1.0 - rho);
    };

    for (long k = 0; k < p.k_max; ++k) {
        const double t = term(k);
        if (!std::isfinite(t)) {
            r.value = acc.get();
            r.converged = false;
            r.note = "non-finite term (integrand left double range)";
            return r;
        }
        acc.add(t);
        ++r.terms_used;
        const double at = std::abs(t);

        if (at == 0.0) {
            if (!any_nonzero && ++zero_run >= zlimit) {
                r.value = 0.0;
                return r;   // identically zero as far as the lattice can see
            }
        } else {
            any_nonzero = true;
            if (prev_abs > 0.0) last_ratio = at / prev_abs;
        }

        const double threshold = p.eps_tail * std::max(std::abs(acc.get()), kTinyFloor);
        if (at < threshold) {
            if (++small_run >= p.consecutive_small) {
                r.value = acc.get();
                r.abs_error = tail_estimate(at > 0.0 ? at : 0.0);
                return r;
            }
        } else {
            small_run = 0;
        }

        if (divergence_probe && k >= probe_burn_in) {
            if (prev_abs >= 0.0 && at >= prev_abs && at >= threshold && at > 0.0) {
                if (++grow_run >= p.consecutive_small) {
                    r.value = acc.get();
                    r.converged = false;
                    r.note = "term magnitudes nondecreasing";
                    return r;
                }
            } else {
                grow_run = 0;
            }
        }

        if (at > 0.0) last_nonzero = at;
        prev_abs = at;
    }

    r.value = acc.get();
    r.converged = false;
    r.abs_error = tail_estimate(last_nonzero);
    r.note = "k_max exhausted before the stopping rule fired";
    return r;
}

}   // namespace detail
}   // namespace qhardy
