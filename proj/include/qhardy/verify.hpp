#pragma once

// Theorem registry and verification engine: sharp constants, direction
// checks with tracked error budgets, sharpness sweeps toward the extremal
// endpoints, the Remark-2.2 constant ordering, and classical q -> 1 limits.

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "qhardy/core.hpp"
#include "qhardy/lattice.hpp"
#include "qhardy/qcore.hpp"
#include "qhardy/qintegral.hpp"
#include "qhardy/qoperators.hpp"

namespace qhardy {

enum class TheoremId {
    t31_upper,      ///< p >= 1, full line
    t31_neg,        ///< p < 0, full line
    t31_reverse,    ///< 0 < p < 1, full line, reversed direction
    t32,            ///< unit interval, strict
    t33_56,         ///< 0 < p < 1, unit interval, corrected weight 1 - t^gamma
    t33_57,         ///< 0 < p < 1, unit interval, boundary-term correction
    t41,            ///< Riemann-Liouville, full line
    c42             ///< Riemann-Liouville, unit interval, strict
};

inline const char* to_string(TheoremId id) {
    switch (id) {
        case TheoremId::t31_upper: return "T3.1-upper";
        case TheoremId::t31_neg: return "T3.1-neg";
        case TheoremId::t31_reverse: return "T3.1-reverse";
        case TheoremId::t32: return "T3.2";
        case TheoremId::t33_56: return "T3.3-corrected-(5.6)";
        case TheoremId::t33_57: return "T3.3-corrected-(5.7)";
        case TheoremId::t41: return "T4.1";
        case TheoremId::c42: return "C4.2";
    }
    return "?";
}

inline TheoremId theorem_from_string(std::string_view s) {
    for (TheoremId id : {TheoremId::t31_upper, TheoremId::t31_neg, TheoremId::t31_reverse,
                         TheoremId::t32, TheoremId::t33_56, TheoremId::t33_57, TheoremId::t41,
                         TheoremId::c42}) {
        if (s == to_string(id)) return id;
    }
    throw ParameterError("unknown theorem id: " + std::string(s));
}

inline std::vector<TheoremId> all_theorems() {
    return {TheoremId::t31_upper, TheoremId::t31_reverse, TheoremId::t31_neg, TheoremId::t32,
            TheoremId::t33_56,    TheoremId::t33_57,      TheoremId::t41,     TheoremId::c42};
}

/// A theorem instance: id plus (q, p, alpha). gamma = (p-1)/p - alpha and
/// the conjugate exponent are derived accessors.
struct InequalityCase {
    TheoremId id = TheoremId::t31_upper;
    double q = 0.5;
    double p = 2.0;
    double alpha = 0.0;

    double gamma() const { return (p - 1.0) / p - alpha; }
    double conjugate() const { return p / (p - 1.0); }

    bool reversed() const {
        return id == TheoremId::t31_reverse || id == TheoremId::t33_56 ||
               id == TheoremId::t33_57;
    }

    bool unit_domain() const {
        return id == TheoremId::t32 || id == TheoremId::t33_56 || id == TheoremId::t33_57 ||
               id == TheoremId::c42;
    }

    bool riemann_liouville() const { return id == TheoremId::t41 || id == TheoremId::c42; }

    bool in_window() const {
        if (!(q > 0.0 && q < 1.0) || !std::isfinite(p) || !std::isfinite(alpha)) return false;
        switch (id) {
            case TheoremId::t31_upper: return p >= 1.0 && alpha < (p - 1.0) / p;
            case TheoremId::t31_neg: return p < 0.0 && alpha < (p - 1.0) / p;
            case TheoremId::t31_reverse:
            case TheoremId::t33_56:
            case TheoremId::t33_57: return p > 0.0 && p < 1.0 && alpha < (p - 1.0) / p;
            case TheoremId::t32: return (p >= 1.0 || p < 0.0) && alpha < (p - 1.0) / p;
            case TheoremId::t41:
            case TheoremId::c42: return p > 1.0 && alpha > 0.0;
        }
        return false;
    }

    std::string window_description() const {
        switch (id) {
            case TheoremId::t31_upper: return "p >= 1 and alpha < (p-1)/p";
            case TheoremId::t31_neg: return "p < 0 and alpha < (p-1)/p";
            case TheoremId::t31_reverse:
            case TheoremId::t33_56:
            case TheoremId::t33_57: return "0 < p < 1 and alpha < (p-1)/p";
            case TheoremId::t32: return "p >= 1 or p < 0, and alpha < (p-1)/p";
            case TheoremId::t41:
            case TheoremId::c42: return "p > 1 and alpha > 0";
        }
        return "";
    }

    void validate() const {
        if (!in_window())
            throw ParameterError(std::string(to_string(id)) + " requires " +
                                 window_description());
    }

    /// Numerical policy of `base` with this case's q.
    QParams params(const QParams& base) const {
        QParams p2 = base;
        p2.q = q;
        return p2;
    }
};

/// Sharp constant of the case: 1/[gamma]_q^p for the upper Hardy branches,
/// [gamma]_q^p for the reverse/corrected ones, and the Gamma_q ratio to the
/// p-th power for the Riemann-Liouville cases.
inline double sharp_constant(const InequalityCase& c, const QParams& base) {
    c.validate();
    const QParams params = c.params(base);
    switch (c.id) {
        case TheoremId::t31_upper:
        case TheoremId::t31_neg:
        case TheoremId::t32:
            return std::pow(q_number(c.gamma(), params), -c.p);
        case TheoremId::t31_reverse:
        case TheoremId::t33_56:
        case TheoremId::t33_57:
            return std::pow(q_number(c.gamma(), params), c.p);
        case TheoremId::t41:
        case TheoremId::c42:
            return std::pow(q_gamma(1.0 - 1.0 / c.p, params) /
                                q_gamma(c.alpha + 1.0 - 1.0 / c.p, params),
                            c.p);
    }
    throw ParameterError("unreachable theorem id");
}

/// Outcome of one inequality check. For every case the report is normalized
/// to the comparison lhs <= rhs + error_budget; reverse cases already carry
/// the swapped sides. ratio = constant * lhs / rhs is directly comparable to
/// the constant.
struct VerificationReport {
    InequalityCase c;
    std::string function_label;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    double ratio = 0.0;
    double margin = 0.0;
    double error_budget = 0.0;
    bool satisfied = false;
    bool degenerate = false;
    bool converged = true;
};

namespace detail {

/// int_0^1 f^p(t) (1 - t^gamma) d_q t; the weight vanishes exactly at the
/// t = 1 lattice node.
inline SeriesResult corrected_pnorm(const LatticeFunction& f, double p_exp, double gamma,
                                    const QParams& params) {
    params.validate();
    const double lq = params.log_q();
    auto term = [&](long j) {
        const double lv = f.log_sample(j * lq);
        if (lv == kNegInf) return 0.0;
        return std::exp(j * lq + p_exp * lv) * (-std::expm1(gamma * j * lq));
    };
    SeriesResult s = sum_series(term, params);
    s.value *= 1.0 - params.q;
    s.abs_error *= 1.0 - params.q;
    return s;
}

struct SidePair {
    double lhs = 0.0, rhs = 0.0;
    double err = 0.0;    ///< combined tracked truncation error of the pair
    bool converged = true;
    std::string note;
};

/// Computes the (lhs, rhs) pair of the case's inequality, rhs including the
/// sharp constant.
inline SidePair case_sides(const InequalityCase& c, const LatticeFunction& f,
                           const QParams& base) {
    const QParams params = c.params(base);
    const double C = sharp_constant(c, base);
    const Domain dom = c.unit_domain() ? Domain::unit_interval : Domain::full_line;
    OperatorParams op{c.alpha, c.p, dom};
    SidePair s;
    switch (c.id) {
        case TheoremId::t31_upper:
        case TheoremId::t31_neg:
        case TheoremId::t32: {
            const SeriesResult lhs = hardy_lhs(f, op, params);
            const SeriesResult rhs = pnorm_p(f, c.p, dom, params);
            s.lhs = lhs.value;
            s.rhs = C * rhs.value;
            s.err = lhs.abs_error + C * rhs.abs_error;
            s.converged = lhs.converged && rhs.converged;
            s.note = !lhs.converged ? lhs.note : rhs.note;
            break;
        }
        case TheoremId::t31_reverse: {
            const SeriesResult lhs = pnorm_p(f, c.p, dom, params);
            const SeriesResult rhs = hardy_lhs(f, op, params);
            s.lhs = lhs.value;
            s.rhs = C * rhs.value;
            s.err = lhs.abs_error + C * rhs.abs_error;
            s.converged = lhs.converged && rhs.converged;
            s.note = !lhs.converged ? lhs.note : rhs.note;
            break;
        }
        case TheoremId::t33_56: {
            const SeriesResult lhs = corrected_pnorm(f, c.p, c.gamma(), params);
            const SeriesResult rhs = hardy_lhs(f, op, params);
            s.lhs = lhs.value;
            s.rhs = C * rhs.value;
            s.err = lhs.abs_error + C * rhs.abs_error;
            s.converged = lhs.converged && rhs.converged;
            s.note = !lhs.converged ? lhs.note : rhs.note;
            break;
        }
        case TheoremId::t33_57: {
            const SeriesResult lhs = pnorm_p(f, c.p, dom, params);
            const SeriesResult inner = hardy_lhs(f, op, params);
            const double boundary =
                std::pow(hardy_transform(f, c.alpha, 1.0, params), c.p) /
                q_number(c.gamma(), params);
            s.lhs = lhs.value;
            s.rhs = C * (inner.value + boundary);
            s.err = lhs.abs_error + C * inner.abs_error;
            s.converged = lhs.converged && inner.converged;
            s.note = !lhs.converged ? lhs.note : inner.note;
            break;
        }
        case TheoremId::t41:
        case TheoremId::c42: {
            const SeriesResult lhs = rl_lhs(f, op, params);
            const SeriesResult rhs = pnorm_p(f, c.p, dom, params);
            s.lhs = lhs.value;
            s.rhs = C * rhs.value;
            s.err = lhs.abs_error + C * rhs.abs_error;
            s.converged = lhs.converged && rhs.converged;
            s.note = !lhs.converged ? lhs.note : rhs.note;
            break;
        }
    }
    return s;
}

}   // namespace detail

/// Check one case against one function. The error budget is 10x the tracked
/// truncation error of both sides.
inline VerificationReport verify_case(const InequalityCase& c, const LatticeFunction& f,
                                      const QParams& base, std::string label = {}) {
    c.validate();
    const detail::SidePair s = detail::case_sides(c, f, base);
    VerificationReport r;
    r.c = c;
    r.function_label = std::move(label);
    r.constant = sharp_constant(c, base);
    r.lhs = s.lhs;
    r.rhs = s.rhs;
    r.error_budget = 10.0 * s.err;
    r.converged = s.converged;
    r.margin = s.rhs - s.lhs;
    r.degenerate = (s.rhs == 0.0 && s.lhs == 0.0);
    r.satisfied = r.degenerate || s.lhs <= s.rhs + r.error_budget;
    r.ratio = r.degenerate ? 0.0 : r.constant * s.lhs / s.rhs;
    return r;
}

/// One extremal-family sweep toward the singular endpoint beta* = -1/p.
/// ratios[j] is the case's constant-comparable ratio at schedule[j]; entries
/// are NaN where the computation did not converge (recorded, not fatal).
struct SharpnessSweep {
    InequalityCase c;
    std::vector<double> schedule;
    std::vector<double> ratios;
    std::vector<double> budgets;                 ///< 10x tracked error per entry
    std::vector<double> ratios_beta2_doubled;    ///< T3.1-neg sensitivity column
    double beta2 = 0.0;                          ///< T3.1-neg only
    double sup_ratio = detail::kNegInf;
    double constant = 0.0;
    double relative_gap = 1.0;
};

struct SweepOptions {
    int steps = 12;
    double delta0 = 0.5;
    double beta2 = 10.0;
    bool beta2_sensitivity = true;   ///< also run the doubled beta2 (T3.1-neg)
};

namespace detail {

/// Truncation horizons grow toward the endpoint: the governing decay
/// exponent of the slowest series is |p| * dist, so k_max scales like its
/// reciprocal, capped.
inline QParams scaled_params(const QParams& params, double p, double dist) {
    QParams r = params;
    const double decay = std::abs(p) * dist * std::abs(std::log(params.q));
    if (decay > 0.0) {
        const long needed = static_cast<long>(std::ceil(48.0 / decay));
        r.k_max = std::min<long>(std::max(r.k_max, needed), 4000000);
    }
    return r;
}

/// Constant-comparable ratio of the case at one extremal parameter.
inline std::pair<double, double> sweep_ratio(const InequalityCase& c,
                                             const LatticeFunction& f, const QParams& params) {
    const Domain dom = c.unit_domain() ? Domain::unit_interval : Domain::full_line;
    OperatorParams op{c.alpha, c.p, dom};
    double num, den, num_err, den_err;
    switch (c.id) {
        case TheoremId::t31_upper:
        case TheoremId::t31_neg:
        case TheoremId::t32: {
            const SeriesResult l = hardy_lhs(f, op, params);
            const SeriesResult n = pnorm_p(f, c.p, dom, params);
            num = l.require();
            den = n.require();
            num_err = l.abs_error;
            den_err = n.abs_error;
            break;
        }
        case TheoremId::t31_reverse: {
            const SeriesResult n = pnorm_p(f, c.p, dom, params);
            const SeriesResult l = hardy_lhs(f, op, params);
            num = n.require();
            den = l.require();
            num_err = n.abs_error;
            den_err = l.abs_error;
            break;
        }
        case TheoremId::t33_56: {
            const SeriesResult n = corrected_pnorm(f, c.p, c.gamma(), params);
            const SeriesResult l = hardy_lhs(f, op, params);
            num = n.require();
            den = l.require();
            num_err = n.abs_error;
            den_err = l.abs_error;
            break;
        }
        case TheoremId::t33_57: {
            const SeriesResult n = pnorm_p(f, c.p, dom, params);
            const SeriesResult l = hardy_lhs(f, op, params);
            const double boundary =
                std::pow(hardy_transform(f, c.alpha, 1.0, params), c.p) /
                q_number(c.gamma(), params);
            num = n.require();
            den = l.require() + boundary;
            num_err = n.abs_error;
            den_err = l.abs_error;
            break;
        }
        case TheoremId::t41:
        case TheoremId::c42: {
            const SeriesResult l = rl_lhs(f, op, params);
            const SeriesResult n = pnorm_p(f, c.p, dom, params);
            num = l.require();
            den = n.require();
            num_err = l.abs_error;
            den_err = n.abs_error;
            break;
        }
        default: throw ParameterError("unreachable theorem id");
    }
    const double ratio = num / den;
    const double budget =
        10.0 * (num_err / std::abs(den) + std::abs(ratio) * den_err / std::abs(den));
    return {ratio, budget};
}

}   // namespace detail

inline SharpnessSweep sharpness_sweep(const InequalityCase& c, const QParams& base,
                                      const SweepOptions& opt = {}) {
    c.validate();
    if (opt.steps < 1) throw ParameterError("sweep needs at least one step");
    SharpnessSweep sw;
    sw.c = c;
    sw.constant = sharp_constant(c, base);

    const double beta_star = -1.0 / c.p;
    // Upper-branch families approach beta* from above; the reverse and
    // negative-p families live in (alpha-1, -1/p) and approach from below.
    const bool from_below = c.id == TheoremId::t31_reverse || c.id == TheoremId::t31_neg ||
                            (c.id == TheoremId::t32 && c.p < 0.0);
    double delta0 = opt.delta0;
    if (from_below) delta0 = std::min(delta0, (beta_star - (c.alpha - 1.0)) / 2.0);

    const bool two_param = c.id == TheoremId::t31_neg;
    if (two_param) sw.beta2 = opt.beta2;

    for (int j = 0; j < opt.steps; ++j) {
        const double dist = delta0 * std::pow(2.0, -j);
        const double beta = from_below ? beta_star - dist : beta_star + dist;
        sw.schedule.push_back(beta);
        const QParams params = detail::scaled_params(c.params(base), c.p, dist);

        ExtremalFamily fam;
        fam.beta = beta;
        if (two_param) {
            fam.kind = FamilyKind::power_two;
            fam.beta2 = opt.beta2;
        } else if (c.id == TheoremId::t31_reverse) {
            fam.kind = FamilyKind::power_tail;
        } else if (c.unit_domain()) {
            fam.kind = FamilyKind::power_plain;
        } else {
            fam.kind = FamilyKind::power_unit;
        }

        double ratio = std::numeric_limits<double>::quiet_NaN();
        double budget = std::numeric_limits<double>::quiet_NaN();
        try {
            const auto [r, b] = detail::sweep_ratio(c, make_extremal(fam), params);
            ratio = r;
            budget = b;
        } catch (const NonConvergentError&) {
            // recorded per-beta, not fatal to the sweep
        }
        sw.ratios.push_back(ratio);
        sw.budgets.push_back(budget);

        if (two_param && opt.beta2_sensitivity) {
            ExtremalFamily alt = fam;
            alt.beta2 = 2.0 * opt.beta2;
            double ratio2 = std::numeric_limits<double>::quiet_NaN();
            try {
                ratio2 = detail::sweep_ratio(c, make_extremal(alt), params).first;
            } catch (const NonConvergentError&) {
            }
            sw.ratios_beta2_doubled.push_back(ratio2);
        }

        if (std::isfinite(ratio) && ratio > sw.sup_ratio) sw.sup_ratio = ratio;
    }
    sw.relative_gap = (sw.constant - sw.sup_ratio) / sw.constant;
    return sw;
}

enum class Remark22Ordering { q_smaller, q_larger, equal };

inline const char* to_string(Remark22Ordering o) {
    switch (o) {
        case Remark22Ordering::q_smaller: return "q-smaller";
        case Remark22Ordering::q_larger: return "q-larger";
        case Remark22Ordering::equal: return "equal";
    }
    return "?";
}

/// Orders the q-constant 1/[gamma]_q against the classical p/(p - alpha p - 1).
inline Remark22Ordering remark_2_2_check(double p, double alpha, double q) {
    if (!(q > 0.0 && q < 1.0)) throw ParameterError("q must lie in (0,1)");
    if (!((p >= 1.0 || p < 0.0) && alpha < 1.0 - 1.0 / p))
        throw ParameterError("Remark 2.2 needs alpha < 1 - 1/p with p >= 1 or p < 0");
    const double gamma = (p - 1.0) / p - alpha;
    QParams params{q};
    const double q_side = 1.0 / q_number(gamma, params);
    const double classical = 1.0 / gamma;
    if (std::abs(q_side - classical) <= 1e-12 * std::max(1.0, std::abs(classical)))
        return Remark22Ordering::equal;
    return q_side < classical ? Remark22Ordering::q_smaller : Remark22Ordering::q_larger;
}

struct LimitRow {
    double q = 0.0;
    double q_constant = 0.0;
    double classical_constant = 0.0;
    double gap = 0.0;
};

/// Classical counterpart of the case constant: (p/(p-alpha p-1))^p for the
/// Hardy branches, gamma^p for the reverse/corrected ones, the classical
/// Gamma ratio for the Riemann-Liouville cases.
inline double classical_constant(const InequalityCase& c) {
    c.validate();
    switch (c.id) {
        case TheoremId::t31_upper:
        case TheoremId::t31_neg:
        case TheoremId::t32:
            return std::pow(c.gamma(), -c.p);
        case TheoremId::t31_reverse:
        case TheoremId::t33_56:
        case TheoremId::t33_57:
            return std::pow(c.gamma(), c.p);
        case TheoremId::t41:
        case TheoremId::c42:
            return std::pow(std::tgamma(1.0 - 1.0 / c.p) /
                                std::tgamma(c.alpha + 1.0 - 1.0 / c.p),
                            c.p);
    }
    throw ParameterError("unreachable theorem id");
}

inline std::vector<LimitRow> classical_limit_scan(const InequalityCase& c,
                                                  const std::vector<double>& q_list,
                                                  const QParams& base) {
    if (q_list.empty()) throw ParameterError("classical_limit_scan needs at least one q");
    for (std::size_t i = 0; i < q_list.size(); ++i) {
        if (!(q_list[i] > 0.0 && q_list[i] < 1.0))
            throw ParameterError("q_list must lie in (0,1)");
        if (i > 0 && !(q_list[i] > q_list[i - 1]))
            throw ParameterError("q_list must be increasing");
    }
    const double classical = classical_constant(c);
    std::vector<LimitRow> rows;
    rows.reserve(q_list.size());
    for (double qv : q_list) {
        InequalityCase cq = c;
        cq.q = qv;
        LimitRow row;
        row.q = qv;
        row.q_constant = sharp_constant(cq, cq.params(base));
        row.classical_constant = classical;
        row.gap = std::abs(row.q_constant - classical);
        rows.push_back(row);
    }
    return rows;
}

}   // namespace qhardy
