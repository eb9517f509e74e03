#pragma once

// Jackson q-integrals on [0,x], improper q-integrals on [0,inf) and interval
// integrals, with compensated summation and tracked truncation tails.

#include <cmath>

#include "qhardy/core.hpp"
#include "qhardy/lattice.hpp"

namespace qhardy {

/// Jackson integral int_0^x f(t) d_q t = (1-q) x sum_{k>=0} q^k f(q^k x).
inline SeriesResult jackson_integral(const LatticeFunction& f, double x, const QParams& p) {
    p.validate();
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("jackson_integral requires x > 0");
    double t = x;
    double qk = 1.0;
    bool first = true;
    auto term = [&](long) {
        if (!first) {
            t *= p.q;
            qk *= p.q;
        }
        first = false;
        return qk * f.sample(t);
    };
    SeriesResult s = detail::sum_series(term, p);
    const double scale = (1.0 - p.q) * x;
    s.value *= scale;
    s.abs_error *= scale;
    if (!s.converged) s.note = "jackson integral, small-t tail: " + s.note;
    return s;
}

/// Improper q-integral int_0^infty f(t) d_q t = (1-q) sum_{k in Z} q^k f(q^k).
/// Both tails are truncated independently; the t -> infinity tail is scanned
/// for nondecreasing terms and fails fast when the integrand cannot decay.
inline SeriesResult improper_integral(const LatticeFunction& f, const QParams& p) {
    p.validate();

    // k >= 0: t = q^k walking toward zero.
    double t_dn = 1.0;
    bool first_dn = true;
    auto term_dn = [&](long) {
        if (!first_dn) t_dn *= p.q;
        first_dn = false;
        return t_dn * f.sample(t_dn);   // q^k f(q^k), and t == q^k here
    };
    const SeriesResult small_t = detail::sum_series(term_dn, p);

    // k <= -1: t = q^k walking toward infinity.
    SeriesResult large_t;
    if (f.support == SupportHint::unit_interval) {
        large_t.terms_used = 0;   // identically zero on (1, inf)
    } else {
        double t_up = 1.0;
        auto term_up = [&](long) {
            t_up /= p.q;
            return t_up * f.sample(t_up);   // q^k f(q^k) with q^k = t > 1
        };
        large_t = detail::sum_series(term_up, p, /*divergence_probe=*/true);
    }

    SeriesResult r;
    const double scale = 1.0 - p.q;
    r.value = scale * (small_t.value + large_t.value);
    r.abs_error = scale * (small_t.abs_error + large_t.abs_error);
    r.terms_used = small_t.terms_used + large_t.terms_used;
    r.converged = small_t.converged && large_t.converged;
    if (!small_t.converged) r.note = "small-t tail (k -> +inf): " + small_t.note;
    if (!large_t.converged) {
        if (!r.note.empty()) r.note += "; ";
        r.note += "large-t tail (k -> -inf): " + large_t.note;
    }
    return r;
}

/// Interval integral int_a^b f d_q t = int_0^b - int_0^a, 0 < a < b <= inf.
inline SeriesResult interval_integral(const LatticeFunction& f, double a, double b,
                                      const QParams& p) {
    p.validate();
    if (!(a > 0.0) || !(a < b)) throw DomainError("interval_integral requires 0 < a < b");
    const SeriesResult upper = std::isinf(b) ? improper_integral(f, p) : jackson_integral(f, b, p);
    const SeriesResult lower = jackson_integral(f, a, p);
    SeriesResult r;
    r.value = upper.value - lower.value;
    r.abs_error = upper.abs_error + lower.abs_error;
    r.terms_used = upper.terms_used + lower.terms_used;
    r.converged = upper.converged && lower.converged;
    if (!upper.converged) r.note = upper.note;
    if (!lower.converged) {
        if (!r.note.empty()) r.note += "; ";
        r.note += lower.note;
    }
    return r;
}

}   // namespace qhardy
