#pragma once

// Seeded pseudo-random test corpus: finite mixtures of power-cutoff atoms
// with case-safe exponent windows, plus two deterministic extremal-family
// representatives per case. Exercises the inequalities away from the
// extremal limits.

#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qhardy/lattice.hpp"
#include "qhardy/qdiscrete.hpp"
#include "qhardy/verify.hpp"

namespace qhardy {

struct CorpusOptions {
    int random_count = 5;
    std::uint64_t seed = 12345;
};

struct CorpusEntry {
    std::string label;
    LatticeFunction f;
};

namespace detail {

// 53-bit uniform; avoids the implementation-defined std distributions so a
// seed pins the corpus bit-for-bit.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double a, double b) {
    return a + (b - a) * uniform01(g);
}

struct PowerAtom {
    double log_coeff = 0.0;
    double beta = 0.0;
    int side = 2;   // 0 = unit (0,1], 1 = tail [1,inf), 2 = plain
};

inline LatticeFunction mixture(std::vector<PowerAtom> atoms) {
    bool unit_only = true, tail_only = true, covers_unit = false, covers_tail = false;
    for (const auto& a : atoms) {
        if (a.side != 0) unit_only = false;
        if (a.side != 1) tail_only = false;
        if (a.side != 1) covers_unit = true;
        if (a.side != 0) covers_tail = true;
    }
    LatticeFunction f;
    f.evaluator = [atoms](double t) {
        double s = 0.0;
        for (const auto& a : atoms) {
            if (a.side == 0 && t > 1.0) continue;
            if (a.side == 1 && t < 1.0) continue;
            s += std::exp(a.log_coeff) * std::pow(t, a.beta);
        }
        return s;
    };
    f.log_evaluator = [atoms](double lt) {
        LogSumExp l;
        for (const auto& a : atoms) {
            if (a.side == 0 && lt > 0.0) continue;
            if (a.side == 1 && lt < 0.0) continue;
            l.add(a.log_coeff + a.beta * lt);
        }
        return l.log();
    };
    f.positivity = (covers_unit && covers_tail) ? Positivity::strictly_positive
                                                : Positivity::nonneg;
    f.support = unit_only ? SupportHint::unit_interval
                          : (tail_only ? SupportHint::tail_interval : SupportHint::all);
    return f;
}

inline std::string atom_label(const std::vector<PowerAtom>& atoms) {
    std::string s = "mix[";
    char buf[64];
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const char* side =
            atoms[i].side == 0 ? "unit" : (atoms[i].side == 1 ? "tail" : "plain");
        std::snprintf(buf, sizeof(buf), "%s%s(b=%.4f,c=%.3f)", i ? "+" : "", side,
                      atoms[i].beta, std::exp(atoms[i].log_coeff));
        s += buf;
    }
    return s + "]";
}

}   // namespace detail

/// Corpus for one case: deterministic extremal representatives at moderate
/// distance from the endpoint plus seeded random mixtures, all inside the
/// case's admissible exponent windows.
inline std::vector<CorpusEntry> make_corpus(const InequalityCase& c,
                                            const CorpusOptions& opt = {}) {
    c.validate();
    using detail::PowerAtom;
    std::vector<CorpusEntry> out;
    const double beta_star = -1.0 / c.p;
    const bool strictly_pos = c.id == TheoremId::t31_neg ||
                              (c.id == TheoremId::t32 && c.p < 0.0);
    const double wlo = c.alpha - 1.0;                 // admissible lower edge
    const double w = beta_star - wlo;                 // window width (below cases)

    // exponent windows for unit-side and tail-side atoms; unit atoms sit
    // below -1/p only when the integrals need strict positivity (p < 0)
    double unit_lo, unit_hi;
    if (strictly_pos) {
        unit_lo = wlo + 0.2 * w;
        unit_hi = beta_star - 0.2 * w;
    } else {
        unit_lo = beta_star + 0.15;
        unit_hi = beta_star + 1.5;
    }
    double tail_lo, tail_hi;
    if (c.id == TheoremId::t31_neg) {
        tail_lo = beta_star + 0.5;   // p < 0: decay needs beta2 > -1/p
        tail_hi = beta_star + 3.0;
    } else if (c.id == TheoremId::t31_reverse) {
        tail_lo = wlo + 0.2 * w;
        tail_hi = beta_star - 0.2 * w;
    } else {
        tail_lo = beta_star - 2.0;
        tail_hi = beta_star - 0.3;
    }

    std::mt19937_64 gen(opt.seed);
    auto push = [&](std::vector<PowerAtom> atoms) {
        out.push_back({detail::atom_label(atoms), detail::mixture(std::move(atoms))});
    };

    // deterministic representatives
    if (strictly_pos) {
        push({PowerAtom{0.0, unit_lo + 0.3 * (unit_hi - unit_lo), 0},
              PowerAtom{0.0, tail_lo + 0.3 * (tail_hi - tail_lo), 1}});
        push({PowerAtom{0.0, unit_lo + 0.7 * (unit_hi - unit_lo), 0},
              PowerAtom{0.0, tail_lo + 0.7 * (tail_hi - tail_lo), 1}});
    } else if (c.unit_domain()) {
        push({PowerAtom{0.0, unit_lo + 0.3 * (unit_hi - unit_lo), 0}});
        push({PowerAtom{0.0, unit_lo + 0.7 * (unit_hi - unit_lo), 2}});
    } else if (c.id == TheoremId::t31_reverse) {
        push({PowerAtom{0.0, tail_lo + 0.3 * (tail_hi - tail_lo), 1}});
        push({PowerAtom{0.0, unit_lo + 0.4 * (unit_hi - unit_lo), 0},
              PowerAtom{0.0, tail_lo + 0.6 * (tail_hi - tail_lo), 1}});
    } else {
        push({PowerAtom{0.0, unit_lo + 0.3 * (unit_hi - unit_lo), 0}});
        push({PowerAtom{0.0, unit_lo + 0.6 * (unit_hi - unit_lo), 0},
              PowerAtom{0.0, tail_lo + 0.5 * (tail_hi - tail_lo), 1}});
    }

    // seeded random mixtures
    for (int i = 0; i < opt.random_count; ++i) {
        std::vector<PowerAtom> atoms;
        if (strictly_pos) {
            const int extra = static_cast<int>(gen() % 2);
            atoms.push_back({std::log(detail::uniform(gen, 0.2, 2.0)),
                             detail::uniform(gen, unit_lo, unit_hi), 0});
            atoms.push_back({std::log(detail::uniform(gen, 0.2, 2.0)),
                             detail::uniform(gen, tail_lo, tail_hi), 1});
            for (int m = 0; m < extra; ++m)
                atoms.push_back({std::log(detail::uniform(gen, 0.2, 2.0)),
                                 detail::uniform(gen, unit_lo, unit_hi), 0});
        } else if (c.unit_domain()) {
            const int n = 1 + static_cast<int>(gen() % 3);
            for (int m = 0; m < n; ++m)
                atoms.push_back({std::log(detail::uniform(gen, 0.2, 2.0)),
                                 detail::uniform(gen, unit_lo, unit_hi), 0});
        } else {
            const int n = 1 + static_cast<int>(gen() % 3);
            for (int m = 0; m < n; ++m) {
                const bool tail = (gen() % 2) == 1;
                if (tail)
                    atoms.push_back({std::log(detail::uniform(gen, 0.2, 2.0)),
                                     detail::uniform(gen, tail_lo, tail_hi), 1});
                else
                    atoms.push_back({std::log(detail::uniform(gen, 0.2, 2.0)),
                                     detail::uniform(gen, unit_lo, unit_hi), 0});
            }
        }
        push(std::move(atoms));
    }
    return out;
}

/// Seeded nonnegative sequences over [0, n-1] for the discrete suite.
inline DiscreteSequence random_sequence(long n, std::mt19937_64& gen, double zero_share = 0.2) {
    DiscreteSequence a;
    a.n_lo = 0;
    a.values.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const bool zero = detail::uniform01(gen) < zero_share;
        a.values.push_back(zero ? 0.0 : detail::uniform(gen, 0.0, 1.0));
    }
    a.positivity = Positivity::nonneg;
    return a;
}

}   // namespace qhardy
