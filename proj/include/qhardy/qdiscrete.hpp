#pragma once

// Discrete geometric-weight Hardy/Copson inequalities, their weighted-mean
// and matrix-operator forms, the reverse inequalities with additional terms
// and the sampled classical checks.
//
// Sequences live on finite windows with exact zero-extension; where the
// index domain is infinite the out-of-window outer terms are geometric and
// are added in closed form, so every value is exact up to rounding.

#include <cmath>
#include <functional>
#include <vector>

#include "qhardy/core.hpp"
#include "qhardy/lattice.hpp"
#include "qhardy/qoperators.hpp"

namespace qhardy {

enum class IndexDomain { one_sided, bilateral };
enum class MeanDirection { hardy, copson };

/// A real sequence a_n supported on the window [n_lo, n_hi]; entries outside
/// the window are zero.
struct DiscreteSequence {
    std::vector<double> values;
    long n_lo = 0;
    Positivity positivity = Positivity::nonneg;

    long n_hi() const { return n_lo + static_cast<long>(values.size()) - 1; }

    double at(long n) const {
        if (n < n_lo || n > n_hi()) return 0.0;
        return values[static_cast<std::size_t>(n - n_lo)];
    }

    void validate() const {
        if (values.empty()) throw DomainError("discrete sequence window is empty");
        for (double v : values) {
            if (!std::isfinite(v)) throw DomainError("discrete sequence has a non-finite entry");
            if (positivity == Positivity::nonneg && v < 0.0)
                throw DomainError("nonnegative sequence has a negative entry");
            if (positivity == Positivity::strictly_positive && !(v > 0.0))
                throw DomainError("strictly positive sequence has a nonpositive entry");
        }
    }
};

/// Index substitution n -> -n about 0.
inline DiscreteSequence reflect(const DiscreteSequence& a) {
    DiscreteSequence r;
    r.values.assign(a.values.rbegin(), a.values.rend());
    r.n_lo = -a.n_hi();
    r.positivity = a.positivity;
    return r;
}

struct DiscreteCase {
    double lambda = 1.0;   ///< exponent lambda > 0
    double p = 2.0;
    double q = 0.5;
    IndexDomain index_domain = IndexDomain::one_sided;

    void validate() const {
        if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
        if (!(q > 0.0) || !(q < 1.0)) throw ParameterError("q must lie in (0,1)");
        if (p == 0.0 || !std::isfinite(p)) throw ParameterError("p must be nonzero");
    }
};

/// Copson sum: sum_n (q^{-lambda n} sum_{k>=n} q^{lambda k} a_k)^p. The
/// inner sums obey I_n = a_n + q^lambda I_{n+1}; for the bilateral domain the
/// below-window outer terms form an exact geometric series.
inline double copson_lhs(const DiscreteSequence& a, const DiscreteCase& c) {
    c.validate();
    a.validate();
    if (c.p < 0.0) {
        if (c.index_domain == IndexDomain::bilateral)
            throw DomainError(
                "copson_lhs: p < 0 needs strictly positive entries on all of Z, which a "
                "finite window cannot provide");
        for (double v : a.values)
            if (!(v > 0.0)) throw DomainError("copson_lhs: zero entry with p < 0");
    }
    if (c.index_domain == IndexDomain::one_sided && a.n_lo < 0)
        throw DomainError("copson_lhs: one-sided domain needs a window inside N");

    const double ql = std::pow(c.q, c.lambda);
    const long lo = (c.index_domain == IndexDomain::one_sided) ? 0 : a.n_lo;
    detail::NeumaierSum acc;
    double inner = 0.0;
    for (long n = a.n_hi(); n >= lo; --n) {
        inner = a.at(n) + ql * inner;
        acc.add(inner > 0.0 ? std::pow(inner, c.p) : 0.0);
    }
    if (c.index_domain == IndexDomain::bilateral && inner > 0.0) {
        const double qlp = std::pow(c.q, c.lambda * c.p);
        acc.add(std::pow(inner, c.p) * qlp / (1.0 - qlp));
    }
    return acc.get();
}

/// Hardy sum: sum_n (q^{lambda n} sum_{k<=n} q^{-lambda k} a_k)^p with the
/// prefix recurrence H_n = a_n + q^lambda H_{n-1}; the above-window outer
/// tail is geometric and added in closed form.
inline double hardy_discrete_lhs(const DiscreteSequence& a, const DiscreteCase& c) {
    c.validate();
    a.validate();
    if (!(c.p > 0.0)) throw DomainError("hardy_discrete_lhs requires p > 0");
    if (c.index_domain == IndexDomain::one_sided && a.n_lo < 0)
        throw DomainError("hardy_discrete_lhs: one-sided domain needs a window inside N");

    const double ql = std::pow(c.q, c.lambda);
    detail::NeumaierSum acc;
    double inner = 0.0;
    for (long n = a.n_lo; n <= a.n_hi(); ++n) {
        inner = a.at(n) + ql * inner;
        acc.add(inner > 0.0 ? std::pow(inner, c.p) : 0.0);
    }
    if (inner > 0.0) {
        const double qlp = std::pow(c.q, c.lambda * c.p);
        acc.add(std::pow(inner, c.p) * qlp / (1.0 - qlp));
    }
    return acc.get();
}

namespace detail {

/// Numeric sum of positive weights over an infinite index ray, with the
/// uniform stopping policy. `weight(m)` enumerates the ray, m = 0,1,2,...
inline double weight_ray_sum(const std::function<double(long)>& weight) {
    NeumaierSum acc;
    int small_run = 0;
    for (long m = 0; m < 2000000; ++m) {
        const double w = weight(m);
        if (!(w >= 0.0) || !std::isfinite(w))
            throw DomainError("weights must be nonnegative and finite");
        acc.add(w);
        if (w < 1e-16 * std::max(acc.get(), kTinyFloor)) {
            if (++small_run >= 5) return acc.get();
        } else {
            small_run = 0;
        }
    }
    throw NonConvergentError("weight partial sum did not converge");
}

}   // namespace detail

/// Weighted mean form: sum_n ((sum_{k in dir(n)} w_k a_k) / (sum_{k in
/// dir(n)} w_k))^p, with dir(n) = {k <= n} (hardy) or {k >= n} (copson).
/// The copson outer sum covers the index domain up to the window top (beyond
/// it the numerator vanishes); the hardy outer sum is capped at the window
/// top. Degenerate 0/0 means (no weight mass yet) are skipped.
inline double weighted_mean_lhs(const DiscreteSequence& a,
                                const std::function<double(long)>& weight, MeanDirection dir,
                                IndexDomain domain, double p) {
    a.validate();
    if (p == 0.0 || !std::isfinite(p)) throw DomainError("weighted_mean_lhs requires p != 0");
    if (domain == IndexDomain::one_sided && a.n_lo < 0)
        throw DomainError("weighted_mean_lhs: one-sided domain needs a window inside N");

    const long hi = a.n_hi();
    detail::NeumaierSum acc;
    auto checked_weight = [&](long k) {
        const double w = weight(k);
        if (!(w >= 0.0) || !std::isfinite(w))
            throw DomainError("weights must be nonnegative and finite");
        return w;
    };
    auto mean_term = [&](double num, double den) {
        if (den == 0.0) {
            if (num == 0.0) return 0.0;   // no weight mass yet
            throw DivisionByZeroError("weighted_mean_lhs: weight partial sum vanished");
        }
        const double m = num / den;
        if (m == 0.0 && p < 0.0)
            throw DomainError("weighted_mean_lhs: zero mean with p < 0");
        return m > 0.0 ? std::pow(m, p) : 0.0;
    };

    if (dir == MeanDirection::copson) {
        const long lo = (domain == IndexDomain::one_sided) ? 0 : a.n_lo;
        double den = detail::weight_ray_sum([&](long m) { return weight(hi + 1 + m); });
        double num = 0.0;
        for (long n = hi; n >= lo; --n) {
            const double w = checked_weight(n);
            den += w;
            num += w * a.at(n);
            acc.add(mean_term(num, den));
        }
        if (domain == IndexDomain::bilateral) {
            // below the window the numerator is frozen and the terms decay
            int small_run = 0;
            for (long n = lo - 1; n >= lo - 2000000; --n) {
                den += checked_weight(n);
                const double t = mean_term(num, den);
                acc.add(t);
                if (t < 1e-16 * std::max(std::abs(acc.get()), detail::kTinyFloor)) {
                    if (++small_run >= 5) break;
                } else {
                    small_run = 0;
                }
            }
        }
    } else {
        const long lo = (domain == IndexDomain::one_sided) ? 0 : a.n_lo;
        double den = (domain == IndexDomain::bilateral)
                         ? detail::weight_ray_sum([&](long m) { return weight(lo - 1 - m); })
                         : 0.0;
        double num = 0.0;
        for (long n = lo; n <= hi; ++n) {
            const double w = checked_weight(n);
            den += w;
            num += w * a.at(n);
            acc.add(mean_term(num, den));
        }
    }
    return acc.get();
}

/// Matrix-operator weight family lambda_{n,k} = q^{(k-n)/p'} (q^{k-n+1}; q)_{alpha-1}.
struct MatrixWeight {
    double alpha = 1.0;    ///< > 0
    double p_conj = 2.0;   ///< conjugate exponent p' > 1
    double q = 0.5;

    void validate() const {
        if (!(alpha > 0.0)) throw ParameterError("matrix weight needs alpha > 0");
        if (!(p_conj > 1.0)) throw ParameterError("matrix weight needs p' > 1");
        if (!(q > 0.0) || !(q < 1.0)) throw ParameterError("q must lie in (0,1)");
    }

    /// Exponent of the outer sum, recovered from p'.
    double p() const { return p_conj / (p_conj - 1.0); }
};

inline double matrix_weight(long n, long k, const MatrixWeight& w, const QParams& params) {
    w.validate();
    if (k < n) return 0.0;
    const double off = static_cast<double>(k - n);
    return std::pow(w.q, off / w.p_conj) *
           q_pochhammer_real(std::pow(w.q, off + 1.0), w.alpha - 1.0, params);
}

namespace detail {

inline double matrix_row_sum(const DiscreteSequence& a, const RlKernel& kernel, long n,
                             double inv_exponent, double lq, MeanDirection dir) {
    NeumaierSum row;
    if (dir == MeanDirection::copson) {
        for (long k = std::max(n, a.n_lo); k <= a.n_hi(); ++k) {
            const long off = k - n;
            row.add(std::exp(off * lq / inv_exponent + kernel.log_weight(off)) * a.at(k));
        }
    } else {
        for (long k = std::min(n, a.n_hi()); k >= a.n_lo; --k) {
            const long off = n - k;
            row.add(std::exp(off * lq / inv_exponent + kernel.log_weight(off)) * a.at(k));
        }
    }
    return row.get();
}

}   // namespace detail

/// Normalizer series Q-bar = sum_{j>=0} q^{j/p'} (q^{j+1}; q)_{alpha-1}
/// (direction copson); the dual normalizer uses exponent 1/p. By the shift
/// identity the per-row normalizer is q^{n/exponent} times this constant.
inline double matrix_normalizer(const MatrixWeight& w, const QParams& params,
                                MeanDirection dir = MeanDirection::copson) {
    w.validate();
    const RlKernel kernel(w.alpha, params);
    const double denom = (dir == MeanDirection::copson) ? w.p_conj : w.p();
    const double lq = std::log(w.q);
    const SeriesResult s = detail::sum_series(
        [&](long j) { return std::exp(j * lq / denom + kernel.log_weight(j)); }, params);
    if (!s.converged) throw NonConvergentError("matrix normalizer series: " + s.note);
    return s.value;
}

/// Best constant of the un-normalized matrix inequality: E = Q-bar^p (copson
/// direction) or Q^p (hardy direction).
inline double matrix_sharp_constant(const MatrixWeight& w, const QParams& params,
                                    MeanDirection dir = MeanDirection::copson) {
    return std::pow(matrix_normalizer(w, params, dir), w.p());
}

/// Matrix-operator sum. Un-normalized: sum_n (sum_k lambda_{n,k} a_k)^p;
/// normalized: each row divided by its normalizer first (which by the shift
/// identity is the same constant for every n once the q^{n/p'} factor is
/// pulled out). Direction copson pairs k >= n with exponent 1/p'; direction
/// hardy is the dual form with k <= n and exponent 1/p.
inline double matrix_lhs(const DiscreteSequence& a, const MatrixWeight& w, IndexDomain domain,
                         bool normalized, const QParams& params,
                         MeanDirection dir = MeanDirection::copson) {
    w.validate();
    a.validate();
    if (domain == IndexDomain::one_sided && a.n_lo < 0)
        throw DomainError("matrix_lhs: one-sided domain needs a window inside N");
    const double pe = w.p();
    const RlKernel kernel(w.alpha, params);
    const double lq = std::log(w.q);
    const double denom = (dir == MeanDirection::copson) ? w.p_conj : w.p();
    const double norm = normalized ? matrix_normalizer(w, params, dir) : 1.0;

    detail::NeumaierSum acc;
    auto add_row = [&](long n) {
        const double row = detail::matrix_row_sum(a, kernel, n, denom, lq, dir) / norm;
        const double t = row > 0.0 ? std::pow(row, pe) : 0.0;
        acc.add(t);
        return t;
    };

    if (dir == MeanDirection::copson) {
        const long lo = (domain == IndexDomain::one_sided) ? 0 : a.n_lo;
        for (long n = a.n_hi(); n >= lo; --n) add_row(n);
        if (domain == IndexDomain::bilateral) {
            // continue below the window until the terms are negligible
            int small_run = 0;
            for (long n = a.n_lo - 1; n >= a.n_lo - params.k_max; --n) {
                const double t = add_row(n);
                if (t < params.eps_tail * std::max(acc.get(), detail::kTinyFloor)) {
                    if (++small_run >= params.consecutive_small) break;
                } else {
                    small_run = 0;
                }
            }
        }
    } else {
        const long lo = (domain == IndexDomain::one_sided) ? std::max<long>(0, a.n_lo) : a.n_lo;
        for (long n = lo; n <= a.n_hi(); ++n) add_row(n);
        int small_run = 0;
        for (long n = a.n_hi() + 1; n <= a.n_hi() + params.k_max; ++n) {
            const double t = add_row(n);
            if (t < params.eps_tail * std::max(acc.get(), detail::kTinyFloor)) {
                if (++small_run >= params.consecutive_small) break;
            } else {
                small_run = 0;
            }
        }
    }
    return acc.get();
}

/// One (lhs, rhs) pair of a displayed inequality.
struct InequalitySides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// The two reverse discrete inequalities for 0 < p < 1 (one-sided, a >= 0):
///   first:  copson sum  >  (1-q^l)^{-p} sum_n (1-q^{l n}) a_n^p
///   second: copson sum + (1-q^l)^{-1} (sum_n q^{l n} a_n)^p
///                        >  (1-q^l)^{-p} sum_n a_n^p
struct ReverseDiscreteResult {
    InequalitySides first;
    InequalitySides second;
};

inline ReverseDiscreteResult reverse_discrete_check(const DiscreteSequence& a,
                                                    const DiscreteCase& c) {
    c.validate();
    a.validate();
    if (!(c.p > 0.0) || !(c.p < 1.0))
        throw ParameterError("reverse_discrete_check requires 0 < p < 1");
    DiscreteCase cc = c;
    cc.index_domain = IndexDomain::one_sided;
    const double copson = copson_lhs(a, cc);

    const double llq = c.lambda * std::log(c.q);
    const double one_minus_ql = -std::expm1(llq);
    detail::NeumaierSum weighted_pnorm, pnorm, geo;
    for (long n = std::max<long>(a.n_lo, 0); n <= a.n_hi(); ++n) {
        const double an = a.at(n);
        const double anp = an > 0.0 ? std::pow(an, c.p) : 0.0;
        pnorm.add(anp);
        weighted_pnorm.add(-std::expm1(llq * static_cast<double>(n)) * anp);   // (1-q^{ln}) a_n^p
        geo.add(std::exp(llq * static_cast<double>(n)) * an);                  // q^{ln} a_n
    }

    ReverseDiscreteResult r;
    const double cpow = std::pow(one_minus_ql, -c.p);
    r.first.lhs = copson;
    r.first.rhs = cpow * weighted_pnorm.get();
    const double g = geo.get();
    r.second.lhs = copson + (g > 0.0 ? std::pow(g, c.p) : 0.0) / one_minus_ql;
    r.second.rhs = cpow * pnorm.get();
    return r;
}

enum class ClassicalForm { weights_321, weights_322 };

/// Sampled classical discrete Hardy forms with the Cass-Kratz constant
/// ((1-alpha)p / (p - alpha p - 1))^p; finite-window check only, no
/// sharpness claim.
inline InequalitySides classical_discrete_check(const DiscreteSequence& a, double alpha,
                                                double p, ClassicalForm form) {
    a.validate();
    if (!(p > 1.0)) throw ParameterError("classical_discrete_check requires p > 1");
    if (!(alpha < 1.0 - 1.0 / p))
        throw ParameterError("classical_discrete_check requires alpha < 1 - 1/p");
    if (a.n_lo < 1) throw DomainError("classical forms need a window starting at n >= 1");

    detail::NeumaierSum lhs, pnorm;
    double num = 0.0, den = 0.0;
    for (long n = a.n_lo; n <= a.n_hi(); ++n) {
        const double nd = static_cast<double>(n);
        double w;
        if (form == ClassicalForm::weights_321) {
            // n^{1-a} - (n-1)^{1-a}, evaluated without cancellation
            w = (n == 1) ? 1.0
                         : -std::pow(nd, 1.0 - alpha) *
                               std::expm1((1.0 - alpha) * std::log1p(-1.0 / nd));
        } else {
            w = std::pow(nd, -alpha);
        }
        num += w * a.at(n);
        den += w;
        const double an = a.at(n);
        pnorm.add(an > 0.0 ? std::pow(an, p) : 0.0);
        if (form == ClassicalForm::weights_321) {
            lhs.add(std::pow(std::pow(nd, alpha - 1.0) * num, p));
        } else {
            lhs.add(den > 0.0 ? std::pow(num / den, p) : 0.0);
        }
    }
    const double constant = std::pow((1.0 - alpha) * p / (p - alpha * p - 1.0), p);
    return InequalitySides{lhs.get(), constant * pnorm.get()};
}

}   // namespace qhardy
