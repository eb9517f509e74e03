#pragma once

// Scalar q-special functions: q-numbers, q-Pochhammer symbols (finite,
// infinite, real order), Gamma_q, B_q and the q-power (x - t)_q^alpha.
//
// All functions are pure and deterministic given their QParams; infinite
// products are accumulated in log space once more than a fixed number of
// factors is needed, which keeps ratios such as Gamma_q well defined even
// when the individual products underflow (q close to 1).

#include <cmath>

#include "qhardy/core.hpp"

namespace qhardy {

/// q-analogue [alpha]_q = (1 - q^alpha) / (1 - q) of a real number.
/// q^alpha is evaluated as exp(alpha * ln q), exact at integer alpha up to
/// rounding.
inline double q_number(double alpha, const QParams& p) {
    p.validate();
    return -std::expm1(alpha * std::log(p.q)) / (1.0 - p.q);
}

/// Finite q-shifted factorial (a; q)_k = prod_{i=0}^{k-1} (1 - a q^i).
inline double q_pochhammer_finite(double a, long k, const QParams& p) {
    p.validate();
    if (k < 0) throw DomainError("q_pochhammer_finite requires k >= 0");
    double r = 1.0;
    double qi = 1.0;
    for (long i = 0; i < k; ++i) {
        r *= 1.0 - a * qi;
        qi *= p.q;
    }
    return r;
}

namespace detail {

/// Log-space representation of an infinite q-product: value = sign *
/// exp(log_abs). Finitely many negative factors (possible for a > 1) are
/// tracked through the sign; a vanishing factor yields sign = 0.
struct LogProduct {
    double log_abs = 0.0;
    int sign = 1;
    double log_err = 0.0;   ///< bound on |log of the dropped tail factor|
    long terms = 0;
    bool converged = true;
};

/// (a; q)_infinity = prod_{i>=0} (1 - a q^i) in log space. The first factors
/// are multiplied directly (they may be negative or zero); once the direct
/// window is past, factors must be positive and log1p accumulation takes
/// over. Truncates when |a| q^N < eps_tail for consecutive_small successive
/// N; the dropped tail is bounded through log(1-t) >= -t/(1-t) applied to
/// the remaining geometric majorant.
inline LogProduct log_q_pochhammer_infinite(double a, const QParams& p) {
    p.validate();
    LogProduct r;
    if (a == 0.0) return r;

    constexpr int kDirectWindow = 50;
    NeumaierSum logsum;
    double direct = 1.0;
    bool direct_phase = true;
    int small_run = 0;
    double qi = 1.0;   // q^i

    auto fold_direct = [&]() {
        if (direct < 0.0) {
            r.sign = -r.sign;
            direct = -direct;
        }
        logsum.add(std::log(direct));
        direct = 1.0;
    };

    for (long i = 0; i < p.n_max_product; ++i) {
        const double t = a * qi;
        const double f = 1.0 - t;
        if (f == 0.0) {
            r.sign = 0;
            r.log_abs = kNegInf;
            r.terms = i + 1;
            return r;
        }
        if (direct_phase) {
            direct *= f;
            const double ad = std::abs(direct);
            if (ad < 1e-150 || ad > 1e150) fold_direct();
            if (i + 1 >= kDirectWindow) {
                fold_direct();
                direct_phase = false;
            }
        } else {
            if (t >= 1.0)
                throw DomainError("q-product factor nonpositive beyond the direct window");
            logsum.add(std::log1p(-t));
        }
        ++r.terms;
        qi *= p.q;

        if (std::abs(a) * qi < p.eps_tail) {
            if (++small_run >= p.consecutive_small) {
                const double tn = std::abs(a) * qi;
                r.log_err = tn / ((1.0 - tn) * (1.0 - p.q));
                if (direct_phase) fold_direct();
                r.log_abs = logsum.get();
                return r;
            }
        } else {
            small_run = 0;
        }
    }

    if (direct_phase) fold_direct();
    r.log_abs = logsum.get();
    r.converged = false;
    return r;
}

}   // namespace detail

/// Infinite q-shifted factorial (a; q)_infinity as a tracked value.
inline SeriesResult q_pochhammer_infinite(double a, const QParams& p) {
    const auto lp = detail::log_q_pochhammer_infinite(a, p);
    SeriesResult r;
    r.terms_used = lp.terms;
    r.converged = lp.converged;
    if (!lp.converged) r.note = "n_max_product exhausted before the stopping rule fired";
    r.value = (lp.sign == 0) ? 0.0 : lp.sign * std::exp(lp.log_abs);
    r.abs_error = std::abs(r.value) * std::expm1(std::min(lp.log_err, 700.0));
    return r;
}

/// Real-order q-shifted factorial (a; q)_alpha = (a; q)_inf / (a q^alpha; q)_inf.
inline double q_pochhammer_real(double a, double alpha, const QParams& p) {
    const auto num = detail::log_q_pochhammer_infinite(a, p);
    const auto den = detail::log_q_pochhammer_infinite(a * std::pow(p.q, alpha), p);
    if (!num.converged || !den.converged)
        throw NonConvergentError("q_pochhammer_real: infinite product did not converge");
    if (den.sign == 0)
        throw DivisionByZeroError("q_pochhammer_real: denominator product vanishes");
    if (num.sign == 0) return 0.0;
    return num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
}

/// Gamma_q(x) = (q; q)_inf / (q^x; q)_inf * (1-q)^{1-x}, with poles at the
/// nonpositive integers detected through an absolute window of 1e-12.
inline double q_gamma(double x, const QParams& p) {
    p.validate();
    if (x < 0.5) {
        const double n = std::round(x);
        if (n <= 0.0 && std::abs(x - n) < 1e-12)
            throw PoleError("Gamma_q pole at nonpositive integer");
    }
    const auto num = detail::log_q_pochhammer_infinite(p.q, p);
    const auto den = detail::log_q_pochhammer_infinite(std::pow(p.q, x), p);
    if (!num.converged || !den.converged)
        throw NonConvergentError("q_gamma: infinite product did not converge");
    if (den.sign == 0) throw PoleError("Gamma_q pole: (q^x; q)_inf vanishes");
    const double lg = num.log_abs - den.log_abs + (1.0 - x) * std::log1p(-p.q);
    return num.sign * den.sign * std::exp(lg);
}

/// B_q(a, b) = (1-q) sum_{i>=0} q^{ia} (q^{i+1}; q)_{b-1}, truncated under
/// the uniform stopping rule. Agrees with Gamma_q(a) Gamma_q(b) /
/// Gamma_q(a+b) within the tracked error.
inline double q_beta(double a, double b, const QParams& p) {
    p.validate();
    if (!(a > 0.0)) throw DomainError("q_beta requires a > 0");
    if (!(b > 0.0)) throw DomainError("q_beta requires b > 0");

    const auto lp0 = detail::log_q_pochhammer_infinite(p.q, p);               // (q^{1}; q)_inf
    const auto ld0 = detail::log_q_pochhammer_infinite(std::pow(p.q, b), p);  // (q^{b}; q)_inf
    if (!lp0.converged || !ld0.converged)
        throw NonConvergentError("q_beta: weight product did not converge");
    if (ld0.sign == 0) throw DivisionByZeroError("q_beta: weight denominator vanishes");

    // w_i = (q^{i+1}; q)_{b-1} maintained through shifted-product updates:
    // (q^{i+2}; q)_inf = (q^{i+1}; q)_inf / (1 - q^{i+1}).
    const double la = a * std::log(p.q);
    double lp = lp0.log_abs;
    double ld = ld0.log_abs;
    double q_pow_i1 = p.q;                 // q^{i+1}
    double q_pow_ib = std::pow(p.q, b);    // q^{i+b}
    auto term = [&](long i) {
        const double v = std::exp(static_cast<double>(i) * la + lp - ld);
        lp -= std::log1p(-q_pow_i1);
        ld -= std::log1p(-q_pow_ib);
        q_pow_i1 *= p.q;
        q_pow_ib *= p.q;
        return v;
    };
    const SeriesResult s = detail::sum_series(term, p);
    if (!s.converged) throw NonConvergentError("q_beta: series did not converge");
    return (1.0 - p.q) * s.value;
}

/// q-power (x - t)_q^alpha = x^alpha (t/x; q)_alpha; for integer alpha = k
/// the exact finite product prod_{i<k} (x - q^i t).
inline double q_power(double x, double t, double alpha, const QParams& p) {
    p.validate();
    if (!(x > 0.0)) throw DomainError("q_power requires x > 0");
    const double n = std::round(alpha);
    if (n >= 0.0 && std::abs(alpha - n) < 1e-12) {
        const long k = static_cast<long>(n);
        double r = 1.0;
        double qi = 1.0;
        for (long i = 0; i < k; ++i) {
            r *= x - qi * t;
            qi *= p.q;
        }
        return r;
    }
    if (t == 0.0) return std::pow(x, alpha);
    if (!(x >= t && t > 0.0))
        throw DomainError("q_power of real order requires x >= t > 0");
    return std::pow(x, alpha) * q_pochhammer_real(t / x, alpha, p);
}

}   // namespace qhardy
