#pragma once

// The paper-level integral operators and functionals: weighted Hardy
// transform, the fractional Riemann-Liouville operator I_q^alpha, their
// left-hand-side functionals L(f), and p-integrals of lattice functions.
//
// The norm functionals walk the lattice in log space. hardy_lhs exploits the
// suffix recurrence A_j = f(q^j) + q^{1-alpha} A_{j+1} of the inner sums, so
// the double q-sum costs O(horizon) instead of O(horizon^2); rl_lhs keeps
// the genuine double sum but caches the kernel weights, which depend only on
// the index offset.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qhardy/core.hpp"
#include "qhardy/lattice.hpp"
#include "qhardy/qcore.hpp"

namespace qhardy {

enum class Domain { full_line, unit_interval };

/// Weight/order parameter, exponent and outer-integration domain of a Hardy
/// or Riemann-Liouville case. gamma and the conjugate exponent are derived
/// accessors, never stored.
struct OperatorParams {
    double alpha = 0.0;
    double p = 2.0;
    Domain domain = Domain::full_line;

    double conjugate() const { return p / (p - 1.0); }
    double gamma() const { return (p - 1.0) / p - alpha; }
};

namespace detail {

/// Memoized log samples lf(j) = ln f(q^j), j in Z.
class LogSampleCache {
public:
    LogSampleCache(const LatticeFunction& f, double log_q) : f_(&f), lq_(log_q) {}

    double operator()(long j) {
        if (j >= 0) {
            while (static_cast<long>(pos_.size()) <= j)
                pos_.push_back(f_->log_sample(static_cast<double>(pos_.size()) * lq_));
            return pos_[static_cast<std::size_t>(j)];
        }
        const long i = -1 - j;
        while (static_cast<long>(neg_.size()) <= i)
            neg_.push_back(f_->log_sample(-static_cast<double>(neg_.size() + 1) * lq_));
        return neg_[static_cast<std::size_t>(i)];
    }

private:
    const LatticeFunction* f_;
    double lq_;
    std::vector<double> pos_, neg_;
};

}   // namespace detail

/// Weighted Hardy mean x^{alpha-1} int_0^x t^{-alpha} f(t) d_q t, evaluated
/// as (1-q) sum_{k>=0} q^{k(1-alpha)} f(x q^k); the x-powers cancel on the
/// lattice.
inline double hardy_transform(const LatticeFunction& f, double alpha, double x,
                              const QParams& params) {
    params.validate();
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hardy_transform requires x > 0");
    const double q1a = std::pow(params.q, 1.0 - alpha);
    double t = x;
    double g = 1.0;
    bool first = true;
    auto term = [&](long) {
        if (!first) {
            t *= params.q;
            g *= q1a;
        }
        first = false;
        return g * f.sample(t);
    };
    const SeriesResult s = detail::sum_series(term, params);
    if (!s.converged) throw NonConvergentError("hardy_transform: " + s.note);
    return (1.0 - params.q) * s.value;
}

/// L(f) = int_D x^{p(alpha-1)} (int_0^x t^{-alpha} f(t) d_q t)^p d_q x with
/// D = (0,inf) or (0,1). On the lattice the outer integrand equals
/// hardy_transform(f, alpha, q^j)^p = ((1-q) A_j)^p with the suffix sums
/// A_j = sum_{k>=0} q^{k(1-alpha)} f(q^{j+k}); A is generated by its one-step
/// recurrence in log space, restarting with a deeper horizon until the outer
/// stopping rule fires.
inline SeriesResult hardy_lhs(const LatticeFunction& f, const OperatorParams& op,
                              const QParams& params) {
    params.validate();
    if (op.p == 0.0 || !std::isfinite(op.p)) throw DomainError("hardy_lhs requires p != 0");
    const double pe = op.p;
    const bool negp = pe < 0.0;
    const double lq = params.log_q();
    const double c = (1.0 - op.alpha) * lq;
    const double lscale = std::log1p(-params.q);
    detail::LogSampleCache cache(f, lq);
    auto lf = [&](long j) {
        const double lv = cache(j);
        if (negp && lv == detail::kNegInf)
            throw DomainError("hardy_lhs: zero sample with p < 0");
        return lv;
    };

    // Inner scan at x = 1 sizes the initial suffix horizon and its tail.
    const SeriesResult inner0 =
        detail::sum_series([&](long k) { return std::exp(k * c + lf(k)); }, params);
    if (!inner0.converged) {
        SeriesResult r;
        r.converged = false;
        r.terms_used = inner0.terms_used;
        r.note = "inner integral (t -> 0): " + inner0.note;
        return r;
    }
    const double inner_rel =
        inner0.abs_error / std::max(std::abs(inner0.value), detail::kTinyFloor);

    const long pad = inner0.terms_used + params.consecutive_small + 8;
    long horizon = std::max<long>(inner0.terms_used, 32);
    std::vector<double> la;
    double sum_a = 0.0, tail_a = 0.0, la_at_zero = detail::kNegInf;
    long terms_a = 0;
    bool ok_a = false;
    std::string note_a;

    for (;;) {
        const long top = horizon + pad;
        la.assign(static_cast<std::size_t>(top) + 1, 0.0);
        double next = detail::kNegInf;
        for (long j = top; j >= 0; --j) {
            next = detail::log_add_exp(lf(j), c + next);
            la[static_cast<std::size_t>(j)] = next;
        }
        la_at_zero = la[0];

        detail::NeumaierSum acc;
        int small_run = 0;
        double prev = -1.0, last_ratio = -1.0, last_abs = 0.0;
        bool fired = false;
        long used = 0;
        for (long j = 0; j <= horizon; ++j) {
            const double v = std::exp(j * lq + pe * (lscale + la[static_cast<std::size_t>(j)]));
            if (!std::isfinite(v)) {
                SeriesResult r;
                r.value = acc.get();
                r.converged = false;
                r.note = "small-t outer tail: non-finite term (integrand left double range)";
                return r;
            }
            acc.add(v);
            ++used;
            if (v > 0.0 && prev > 0.0) last_ratio = v / prev;
            const double thr = params.eps_tail * std::max(std::abs(acc.get()), detail::kTinyFloor);
            if (v < thr) {
                if (++small_run >= params.consecutive_small) {
                    fired = true;
                    last_abs = v;
                    sum_a = acc.get();
                    terms_a = used;
                    break;
                }
            } else {
                small_run = 0;
            }
            prev = v;
        }
        if (fired) {
            const double rho = (last_ratio > 0.0 && last_ratio < 0.999) ? last_ratio : 0.999;
            tail_a = last_abs > 0.0 ? last_abs * rho / (1.0 - rho) : 0.0;
            ok_a = true;
            break;
        }
        if (horizon >= params.k_max) {
            sum_a = acc.get();
            terms_a = used;
            note_a = "small-t outer tail: k_max exhausted";
            break;
        }
        horizon = std::min(params.k_max, 2 * horizon + 64);
    }

    double sum_b = 0.0, tail_b = 0.0;
    long terms_b = 0;
    bool ok_b = true;
    std::string note_b;
    if (op.domain == Domain::full_line) {
        double la_prev = la_at_zero;
        auto term_b = [&](long k) {
            const long j = -1 - k;
            la_prev = detail::log_add_exp(lf(j), c + la_prev);
            return std::exp(j * lq + pe * (lscale + la_prev));
        };
        const SeriesResult b = detail::sum_series(term_b, params, /*divergence_probe=*/true);
        sum_b = b.value;
        tail_b = b.abs_error;
        terms_b = b.terms_used;
        ok_b = b.converged;
        if (!ok_b) note_b = "large-t outer tail: " + b.note;
    }

    SeriesResult r;
    r.value = (1.0 - params.q) * (sum_a + sum_b);
    r.terms_used = inner0.terms_used + terms_a + terms_b;
    r.converged = ok_a && ok_b;
    r.abs_error = (1.0 - params.q) * (tail_a + tail_b) +
                  std::abs(pe) * inner_rel * std::abs(r.value);
    if (!ok_a) r.note = note_a;
    if (!ok_b) {
        if (!r.note.empty()) r.note += "; ";
        r.note += note_b;
    }
    return r;
}

/// Cached Riemann-Liouville kernel weights (q^{i+1}; q)_{alpha-1}, kept in
/// logs and grown on demand through the shifted-product recurrence. Growth
/// is not synchronized; share across threads only after warm-up.
class RlKernel {
public:
    RlKernel(double alpha, const QParams& params) : q_(params.q) {
        if (!(alpha > 0.0)) throw DomainError("Riemann-Liouville order must be positive");
        const auto lp = detail::log_q_pochhammer_infinite(params.q, params);
        const auto ld = detail::log_q_pochhammer_infinite(std::pow(params.q, alpha), params);
        if (!lp.converged || !ld.converged)
            throw NonConvergentError("RlKernel: weight product did not converge");
        lp_ = lp.log_abs;
        ld_ = ld.log_abs;
        q_pow_i1_ = params.q;
        q_pow_ia_ = std::pow(params.q, alpha);
        lw_.push_back(lp_ - ld_);
    }

    double log_weight(long i) const {
        while (static_cast<long>(lw_.size()) <= i) grow();
        return lw_[static_cast<std::size_t>(i)];
    }

    double weight(long i) const { return std::exp(log_weight(i)); }

private:
    void grow() const {
        lp_ -= std::log1p(-q_pow_i1_);
        ld_ -= std::log1p(-q_pow_ia_);
        q_pow_i1_ *= q_;
        q_pow_ia_ *= q_;
        lw_.push_back(lp_ - ld_);
    }

    double q_;
    mutable double lp_, ld_, q_pow_i1_, q_pow_ia_;
    mutable std::vector<double> lw_;
};

/// I_q^alpha f(x) = (x^alpha / Gamma_q(alpha)) (1-q) sum_{i>=0}
/// (q^{i+1}; q)_{alpha-1} f(x q^i) q^i. Kernel weights are reused across x
/// through the supplied kernel.
inline double rl_transform(const LatticeFunction& f, const RlKernel& kernel, double alpha,
                           double x, const QParams& params) {
    params.validate();
    if (!(alpha > 0.0)) throw DomainError("rl_transform requires alpha > 0");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("rl_transform requires x > 0");
    const double gq = q_gamma(alpha, params);
    double t = x;
    double qi = 1.0;
    bool first = true;
    auto term = [&](long i) {
        if (!first) {
            t *= params.q;
            qi *= params.q;
        }
        first = false;
        return kernel.weight(i) * qi * f.sample(t);
    };
    const SeriesResult s = detail::sum_series(term, params);
    if (!s.converged) throw NonConvergentError("rl_transform: " + s.note);
    return std::pow(x, alpha) / gq * (1.0 - params.q) * s.value;
}

inline double rl_transform(const LatticeFunction& f, double alpha, double x,
                           const QParams& params) {
    const RlKernel kernel(alpha, params);
    return rl_transform(f, kernel, alpha, x, params);
}

/// int_D (I_q^alpha f(x) / x^alpha)^p d_q x. The inner sums S_j =
/// sum_i W_i q^i f(q^{j+i}) are accumulated by online log-sum-exp with the
/// uniform relative stopping rule.
inline SeriesResult rl_lhs(const LatticeFunction& f, const OperatorParams& op,
                           const QParams& params) {
    params.validate();
    if (!(op.p > 1.0)) throw DomainError("rl_lhs requires p > 1");
    if (!(op.alpha > 0.0)) throw DomainError("rl_lhs requires alpha > 0");
    const double pe = op.p;
    const double lq = params.log_q();
    const RlKernel kernel(op.alpha, params);
    detail::LogSampleCache lf(f, lq);
    const double lc = std::log1p(-params.q) - std::log(q_gamma(op.alpha, params));
    const long zlimit = detail::zero_run_limit(params);

    auto log_inner = [&](long j) -> double {
        detail::LogSumExp lse;
        int small_run = 0;
        long zero_run = 0;
        const long i0 = (f.support == SupportHint::unit_interval && j < 0) ? -j : 0;
        for (long i = i0; i - i0 < params.k_max; ++i) {
            const double lfi = lf(j + i);
            if (lfi == detail::kNegInf) {
                if (lse.max != detail::kNegInf) {
                    if (++small_run >= params.consecutive_small) break;
                } else if (++zero_run >= zlimit) {
                    break;
                }
                continue;
            }
            const double lt = kernel.log_weight(i) + static_cast<double>(i) * lq + lfi;
            if (lse.max == detail::kNegInf || lt > lse.max) {
                lse.add(lt);
                small_run = 0;
                continue;
            }
            const double e = std::exp(lt - lse.max);
            lse.sum += e;
            if (e < params.eps_tail * lse.sum) {
                if (++small_run >= params.consecutive_small) break;
            } else {
                small_run = 0;
            }
        }
        return lse.log();
    };

    auto outer_term = [&](long j) {
        const double ls = log_inner(j);
        if (ls == detail::kNegInf) return 0.0;
        return std::exp(j * lq + pe * (lc + ls));
    };

    const SeriesResult a = detail::sum_series([&](long k) { return outer_term(k); }, params);
    SeriesResult b;
    if (op.domain == Domain::full_line)
        b = detail::sum_series([&](long k) { return outer_term(-1 - k); }, params,
                               /*divergence_probe=*/true);

    SeriesResult r;
    const double scale = 1.0 - params.q;
    r.value = scale * (a.value + b.value);
    r.terms_used = a.terms_used + b.terms_used;
    r.converged = a.converged && b.converged;
    r.abs_error = scale * (a.abs_error + b.abs_error) +
                  pe * params.consecutive_small * params.eps_tail * std::abs(r.value);
    if (!a.converged) r.note = "small-t outer tail: " + a.note;
    if (!b.converged) {
        if (!r.note.empty()) r.note += "; ";
        r.note += "large-t outer tail: " + b.note;
    }
    return r;
}

/// int_D f^p(t) d_q t over the full line or the unit interval; the un-rooted
/// p-integral. Requires f >= 0; a zero sample with p < 0 is out of contract.
inline SeriesResult pnorm_p(const LatticeFunction& f, double p_exp, Domain domain,
                            const QParams& params) {
    params.validate();
    if (p_exp == 0.0 || !std::isfinite(p_exp)) throw DomainError("pnorm_p requires p != 0");
    const double lq = params.log_q();
    detail::LogSampleCache lf(f, lq);
    auto term_at = [&](long j) {
        const double lv = lf(j);
        if (lv == detail::kNegInf) {
            if (p_exp < 0.0) throw DomainError("pnorm_p: zero sample with p < 0");
            return 0.0;
        }
        return std::exp(j * lq + p_exp * lv);
    };

    const SeriesResult a = detail::sum_series([&](long k) { return term_at(k); }, params);
    SeriesResult b;
    // the support shortcut must not bypass the p < 0 zero-sample contract
    if (domain == Domain::full_line &&
        (f.support != SupportHint::unit_interval || p_exp < 0.0))
        b = detail::sum_series([&](long k) { return term_at(-1 - k); }, params,
                               /*divergence_probe=*/true);

    SeriesResult r;
    const double scale = 1.0 - params.q;
    r.value = scale * (a.value + b.value);
    r.terms_used = a.terms_used + b.terms_used;
    r.converged = a.converged && b.converged;
    r.abs_error = scale * (a.abs_error + b.abs_error);
    if (!a.converged) r.note = "small-t tail: " + a.note;
    if (!b.converged) {
        if (!r.note.empty()) r.note += "; ";
        r.note += "large-t tail: " + b.note;
    }
    return r;
}

}   // namespace qhardy
