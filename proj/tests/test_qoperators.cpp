#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qhardy/corpus.hpp"
#include "qhardy/qcore.hpp"
#include "qhardy/qintegral.hpp"
#include "qhardy/qoperators.hpp"

using namespace qhardy;

namespace {

QParams qp(double q) { return QParams{q}; }

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}

double brute_poch_inf(double a, double q) {
    double prod = 1.0, qi = 1.0;
    for (int i = 0; i < 2000000; ++i) {
        const double f = 1.0 - a * qi;
        if (f == 1.0) break;
        prod *= f;
        qi *= q;
    }
    return prod;
}

double brute_q_gamma(double x, double q) {
    return brute_poch_inf(q, q) / brute_poch_inf(std::pow(q, x), q) * std::pow(1.0 - q, 1.0 - x);
}

// Independent oracle for L(f): plain nested lattice sums, no stopping rule,
// no recurrences. Safe at moderate exponents only.
template <class F>
double brute_hardy_lhs(F&& f, double alpha, double p, double q, bool unit, int j_lo = -160,
                       int j_hi = 360, int K = 800) {
    double outer = 0.0;
    for (int j = unit ? 0 : j_lo; j <= j_hi; ++j) {
        double inner = 0.0;
        for (int k = K; k >= 0; --k) {
            const double t = std::pow(q, j + k);
            if (t == 0.0) continue;
            inner += std::pow(q, k * (1.0 - alpha)) * f(t);
        }
        inner *= 1.0 - q;   // = hardy mean at x = q^j
        outer += std::pow(q, j) * std::pow(inner, p);
    }
    return (1.0 - q) * outer;
}

// Independent oracle for the Riemann-Liouville norm functional.
template <class F>
double brute_rl_lhs(F&& f, double alpha, double p, double q, bool unit, int j_lo = -120,
                    int j_hi = 320, int K = 700) {
    const double gq = brute_q_gamma(alpha, q);
    std::vector<double> w(static_cast<std::size_t>(K) + 1);
    for (int i = 0; i <= K; ++i)
        w[i] = brute_poch_inf(std::pow(q, i + 1.0), q) / brute_poch_inf(std::pow(q, i + alpha), q);
    double outer = 0.0;
    for (int j = unit ? 0 : j_lo; j <= j_hi; ++j) {
        double inner = 0.0;
        for (int i = K; i >= 0; --i) {
            const double t = std::pow(q, j + i);
            if (t == 0.0) continue;
            inner += w[i] * std::pow(q, i) * f(t);
        }
        inner *= (1.0 - q) / gq;
        outer += std::pow(q, j) * std::pow(inner, p);
    }
    return (1.0 - q) * outer;
}

}   // namespace

TEST_CASE("hardy_transform point values") {
    const auto one = lattice_fn([](double) { return 1.0; });
    CHECK(rel_close(hardy_transform(one, 0.0, 1.0, qp(0.5)), 1.0, 1e-13));

    const auto lin = lattice_fn([](double t) { return t; });
    CHECK(rel_close(hardy_transform(lin, 0.0, 1.0, qp(0.5)), 2.0 / 3.0, 1e-13));

    const auto f = make_extremal({FamilyKind::power_unit, -0.4, {}});
    const double want = 0.5 / (1.0 - std::pow(0.5, 1.6));
    CHECK(rel_close(hardy_transform(f, -1.0, 1.0, qp(0.5)), want, 1e-13));

    CHECK_THROWS_AS(hardy_transform(one, 0.0, 0.0, qp(0.5)), DomainError);
}

TEST_CASE("hardy_lhs exact value for the spec family") {
    const auto f = make_extremal({FamilyKind::power_unit, 1.0, {}});
    const OperatorParams op{0.0, 2.0, Domain::full_line};
    const auto r = hardy_lhs(f, op, qp(0.5));
    REQUIRE(r.converged);
    CHECK(rel_close(r.value, 10.0 / 21.0, 1e-12));
    // never below the proof's geometric lower bound
    const double floor_bound = std::pow(0.5 / 0.75, 2.0) * (4.0 / 7.0);
    CHECK(r.value >= floor_bound);
    // oracle path
    const double oracle =
        brute_hardy_lhs([](double t) { return t <= 1.0 ? t : 0.0; }, 0.0, 2.0, 0.5, false);
    CHECK(rel_close(r.value, oracle, 1e-12));
}

TEST_CASE("hardy_lhs against the brute-force double sum") {
    struct Cell {
        ExtremalFamily fam;
        double alpha, p, q;
        bool unit;
    };
    const Cell cells[] = {
        {{FamilyKind::power_unit, 0.25, {}}, 0.0, 2.0, 0.5, false},
        {{FamilyKind::power_unit, 0.5, {}}, -1.0, 3.0, 0.3, false},
        {{FamilyKind::power_two, -0.4, -3.0}, 0.2, 2.0, 0.5, false},
        {{FamilyKind::power_plain, 0.5, {}}, -1.0, 1.0, 0.8, true},
        {{FamilyKind::power_tail, -2.5, {}}, -2.0, 0.5, 0.5, false},
        {{FamilyKind::power_two, -0.5, 1.0}, -2.0, -2.0, 0.5, false},
    };
    for (const auto& cell : cells) {
        const auto f = make_extremal(cell.fam);
        const OperatorParams op{cell.alpha, cell.p,
                                cell.unit ? Domain::unit_interval : Domain::full_line};
        const auto got = hardy_lhs(f, op, qp(cell.q));
        REQUIRE(got.converged);
        const auto plain = f.evaluator;
        const double want = brute_hardy_lhs(plain, cell.alpha, cell.p, cell.q, cell.unit);
        INFO("alpha=" << cell.alpha << " p=" << cell.p << " q=" << cell.q);
        CHECK(rel_close(got.value, want, 1e-11));
    }
}

TEST_CASE("hardy_lhs edge behavior") {
    SECTION("zero function") {
        const auto zero = lattice_fn([](double) { return 0.0; }, Positivity::nonneg);
        const OperatorParams op{0.0, 2.0, Domain::full_line};
        CHECK(hardy_lhs(zero, op, qp(0.5)).require() == 0.0);
    }
    SECTION("p = 1 is an identity on the full line, strict on the unit interval") {
        const auto f = make_extremal({FamilyKind::power_unit, 0.5, {}});
        const double q = 0.5, alpha = -1.0;
        const OperatorParams full{alpha, 1.0, Domain::full_line};
        const double lhs = hardy_lhs(f, full, qp(q)).require();
        const double rhs = pnorm_p(f, 1.0, Domain::full_line, qp(q)).require() /
                           q_number(-alpha, qp(q));
        CHECK(rel_close(lhs, rhs, 1e-12));

        const OperatorParams unit{alpha, 1.0, Domain::unit_interval};
        const double lhs_u = hardy_lhs(f, unit, qp(q)).require();
        const double rhs_u = pnorm_p(f, 1.0, Domain::unit_interval, qp(q)).require() /
                             q_number(-alpha, qp(q));
        CHECK(lhs_u < rhs_u);
    }
    SECTION("p < 0 rejects zero samples") {
        const auto f = make_extremal({FamilyKind::power_unit, 0.5, {}});
        const OperatorParams op{-2.0, -2.0, Domain::full_line};
        CHECK_THROWS_AS(hardy_lhs(f, op, qp(0.5)), DomainError);
    }
}

TEST_CASE("rl_transform") {
    SECTION("order one reduces to the jackson integral") {
        const auto funcs = {make_extremal({FamilyKind::power_unit, 0.5, {}}),
                            make_extremal({FamilyKind::power_two, -0.3, -2.0}),
                            lattice_fn([](double t) { return std::cos(t); })};
        for (const auto& f : funcs) {
            for (double x : {0.25, 1.0, 3.0}) {
                const double a = rl_transform(f, 1.0, x, qp(0.5));
                const double b = jackson_integral(f, x, qp(0.5)).require();
                CHECK(rel_close(a, b, 1e-12));
            }
        }
    }
    SECTION("constant input, integer order") {
        const auto one = lattice_fn([](double) { return 1.0; });
        CHECK(rel_close(rl_transform(one, 2.0, 1.0, qp(0.5)), 2.0 / 3.0, 1e-12));
    }
    SECTION("power input, fractional order, against B_q") {
        const auto f = make_extremal({FamilyKind::power_unit, 0.5, {}});
        const double got = rl_transform(f, 0.5, 1.0, qp(0.5));
        const double want = q_beta(1.5, 0.5, qp(0.5)) / q_gamma(0.5, qp(0.5));
        CHECK(rel_close(got, want, 1e-12));
        CHECK(rel_close(got, 0.9208754502712838, 1e-12));
    }
}

TEST_CASE("rl_lhs") {
    SECTION("zero function") {
        const auto zero = lattice_fn([](double) { return 0.0; }, Positivity::nonneg);
        const OperatorParams op{0.5, 2.0, Domain::full_line};
        CHECK(rl_lhs(zero, op, qp(0.5)).require() == 0.0);
    }
    SECTION("order one equals the alpha = 0 hardy functional") {
        for (const auto& fam : {ExtremalFamily{FamilyKind::power_unit, 0.25, {}},
                                ExtremalFamily{FamilyKind::power_two, -0.2, -3.0}}) {
            const auto f = make_extremal(fam);
            const double rl =
                rl_lhs(f, OperatorParams{1.0, 2.0, Domain::full_line}, qp(0.5)).require();
            const double hardy =
                hardy_lhs(f, OperatorParams{0.0, 2.0, Domain::full_line}, qp(0.5)).require();
            CHECK(rel_close(rl, hardy, 1e-12));
        }
    }
    SECTION("against the brute-force double sum and the paper's floor") {
        const auto f = make_extremal({FamilyKind::power_unit, 0.0, {}});
        const double q = 0.5, alpha = 0.5, p = 2.0;
        const auto got = rl_lhs(f, OperatorParams{alpha, p, Domain::full_line}, qp(q));
        REQUIRE(got.converged);
        const double oracle = brute_rl_lhs([](double t) { return t <= 1.0 ? 1.0 : 0.0; }, alpha,
                                           p, q, false);
        CHECK(rel_close(got.value, oracle, 1e-11));
        const double gq = q_gamma(alpha, qp(q));
        const double floor_bound = (1.0 - q) / (std::pow(gq, p) * (1.0 - std::pow(q, 1.0))) *
                                   std::pow(q_beta(1.0, alpha, qp(q)), p);
        CHECK(got.value >= floor_bound - 1e-12);
    }
    SECTION("unit domain against brute force") {
        const auto f = make_extremal({FamilyKind::power_plain, 0.5, {}});
        const auto got = rl_lhs(f, OperatorParams{2.0, 1.5, Domain::unit_interval}, qp(0.3));
        const double oracle =
            brute_rl_lhs([](double t) { return std::pow(t, 0.5); }, 2.0, 1.5, 0.3, true);
        CHECK(rel_close(got.require(), oracle, 1e-11));
    }
}

TEST_CASE("pnorm_p") {
    CHECK(rel_close(pnorm_p(make_extremal({FamilyKind::power_unit, 1.0, {}}), 2.0,
                            Domain::full_line, qp(0.5))
                        .require(),
                    4.0 / 7.0, 1e-13));
    for (double p : {0.5, 1.0, 3.0}) {
        CHECK(rel_close(pnorm_p(make_extremal({FamilyKind::power_unit, 0.0, {}}), p,
                                Domain::full_line, qp(0.5))
                            .require(),
                        1.0, 1e-13));
    }
    CHECK(rel_close(pnorm_p(make_extremal({FamilyKind::power_tail, -1.0, {}}), 2.0,
                            Domain::full_line, qp(0.5))
                        .require(),
                    1.0, 1e-13));
    SECTION("p < 0 rejects zero samples") {
        CHECK_THROWS_AS(pnorm_p(make_extremal({FamilyKind::power_unit, 0.5, {}}), -2.0,
                                Domain::full_line, qp(0.5)),
                        DomainError);
    }
    SECTION("p < 0 on strictly positive input matches the direct integral") {
        const auto f = make_extremal({FamilyKind::power_two, 0.3, 1.0});
        const double got = pnorm_p(f, -2.0, Domain::full_line, qp(0.5)).require();
        const double direct =
            improper_integral(lattice_fn([](double t) {
                                  const double b = t <= 1.0 ? 0.3 : 1.0;
                                  return std::pow(std::pow(t, b), -2.0);
                              }),
                              qp(0.5))
                .require();
        CHECK(rel_close(got, direct, 1e-12));
    }
}

TEST_CASE("Theorem 3.1 inequality over extremal and random corpora") {
    for (double q : {0.3, 0.5, 0.8}) {
        for (double p : {1.0, 2.0, 3.0}) {
            for (double alpha : {0.0, -1.0, 0.2}) {
                if (alpha == 0.2 && p != 2.0) continue;
                InequalityCase c{TheoremId::t31_upper, q, p, alpha};
                if (!c.in_window()) continue;
                const double C = sharp_constant(c, qp(q));
                for (const auto& [label, f] : make_corpus(c, {3, 77})) {
                    const OperatorParams op{alpha, p, Domain::full_line};
                    const auto lhs = hardy_lhs(f, op, qp(q));
                    const auto rhs = pnorm_p(f, p, Domain::full_line, qp(q));
                    REQUIRE(lhs.converged);
                    REQUIRE(rhs.converged);
                    const double budget = 10.0 * (lhs.abs_error + C * rhs.abs_error);
                    INFO(label << " q=" << q << " p=" << p << " alpha=" << alpha);
                    CHECK(lhs.value <= C * rhs.value + budget);
                }
            }
        }
    }
}

TEST_CASE("Theorem 3.1 negative-p branch") {
    InequalityCase c{TheoremId::t31_neg, 0.5, -2.0, -2.0};
    const double C = sharp_constant(c, qp(0.5));
    for (const auto& [label, f] : make_corpus(c, {3, 99})) {
        const auto lhs = hardy_lhs(f, OperatorParams{-2.0, -2.0, Domain::full_line}, qp(0.5));
        const auto rhs = pnorm_p(f, -2.0, Domain::full_line, qp(0.5));
        REQUIRE(lhs.converged);
        REQUIRE(rhs.converged);
        INFO(label);
        CHECK(lhs.value <= C * rhs.value + 10.0 * (lhs.abs_error + C * rhs.abs_error));
    }
}

TEST_CASE("Theorem 3.1 reverse branch for 0 < p < 1") {
    InequalityCase c{TheoremId::t31_reverse, 0.5, 0.5, -2.0};
    const double gp = std::pow(q_number(c.gamma(), qp(0.5)), c.p);
    for (const auto& [label, f] : make_corpus(c, {3, 55})) {
        const auto norm = pnorm_p(f, c.p, Domain::full_line, qp(0.5));
        const auto lhs = hardy_lhs(f, OperatorParams{c.alpha, c.p, Domain::full_line}, qp(0.5));
        REQUIRE(norm.converged);
        REQUIRE(lhs.converged);
        INFO(label);
        CHECK(norm.value <= gp * lhs.value + 10.0 * (norm.abs_error + gp * lhs.abs_error));
    }
}

TEST_CASE("Theorem 3.2 strictness on the unit interval") {
    for (double p : {1.0, 2.0, -2.0}) {
        for (double alpha : {0.0, -1.0}) {
            InequalityCase c{TheoremId::t32, 0.5, p, alpha};
            if (!c.in_window()) continue;
            const double C = sharp_constant(c, qp(0.5));
            for (const auto& [label, f] : make_corpus(c, {3, 42})) {
                const auto lhs =
                    hardy_lhs(f, OperatorParams{alpha, p, Domain::unit_interval}, qp(0.5));
                const auto rhs = pnorm_p(f, p, Domain::unit_interval, qp(0.5));
                REQUIRE(lhs.converged);
                REQUIRE(rhs.converged);
                const double budget = 10.0 * (lhs.abs_error + C * rhs.abs_error);
                INFO(label << " p=" << p << " alpha=" << alpha);
                CHECK(C * rhs.value - lhs.value > budget);
            }
        }
    }
}

TEST_CASE("Theorem 4.1 inequality and the cross-theorem constant") {
    for (double q : {0.3, 0.5, 0.8}) {
        for (double p : {1.5, 2.0, 3.0}) {
            for (double alpha : {0.5, 1.0, 2.0}) {
                InequalityCase c{TheoremId::t41, q, p, alpha};
                const double C = sharp_constant(c, qp(q));
                for (const auto& [label, f] : make_corpus(c, {2, 31})) {
                    const auto lhs =
                        rl_lhs(f, OperatorParams{alpha, p, Domain::full_line}, qp(q));
                    const auto rhs = pnorm_p(f, p, Domain::full_line, qp(q));
                    REQUIRE(lhs.converged);
                    REQUIRE(rhs.converged);
                    INFO(label << " q=" << q << " p=" << p << " alpha=" << alpha);
                    CHECK(lhs.value <= C * rhs.value + 10.0 * (lhs.abs_error + C * rhs.abs_error));
                }
            }
        }
    }
    SECTION("alpha = 1 matches the Hardy constant at alpha = 0") {
        for (double q : {0.3, 0.5, 0.8}) {
            for (double p : {1.5, 2.0, 3.0}) {
                const double rl = sharp_constant({TheoremId::t41, q, p, 1.0}, qp(q));
                const double hardy = sharp_constant({TheoremId::t31_upper, q, p, 0.0}, qp(q));
                CHECK(rel_close(rl, hardy, 1e-12));
            }
        }
    }
}

TEST_CASE("ratio homogeneity in the function scale") {
    const auto base = make_extremal({FamilyKind::power_unit, 0.4, {}});
    const OperatorParams op{0.0, 2.0, Domain::full_line};
    const double r0 = hardy_lhs(base, op, qp(0.5)).require() /
                      pnorm_p(base, 2.0, Domain::full_line, qp(0.5)).require();
    for (double cscale : {0.125, 3.0, 40.0}) {
        LatticeFunction g;
        g.evaluator = [cscale](double t) { return t <= 1.0 ? cscale * std::pow(t, 0.4) : 0.0; };
        g.log_evaluator = [cscale](double lt) {
            return lt <= 0.0 ? std::log(cscale) + 0.4 * lt : qhardy::detail::kNegInf;
        };
        g.positivity = Positivity::nonneg;
        g.support = SupportHint::unit_interval;
        const double r = hardy_lhs(g, op, qp(0.5)).require() /
                         pnorm_p(g, 2.0, Domain::full_line, qp(0.5)).require();
        CHECK(rel_close(r, r0, 1e-12));
    }
}
