#include "khab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "khab/constants.hpp"
#include "khab/conversion.hpp"

namespace khab {

CounterexampleSpec make_counterexample(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("counterexample: epsilon must lie in [0, 1], got " + std::to_string(epsilon));
    CounterexampleSpec spec;
    spec.epsilon = epsilon;
    spec.t0 = std::pow(0.6, 0.25);
    return spec;
}

Polynomial build_h(double t0) {
    if (!(t0 > 0)) throw std::invalid_argument("build_h: t0 must be positive");
    const Polynomial lin{-t0, 1.0};
    return lin * lin * lin * lin * (1.0 / std::pow(t0, 4));
}

PiecewisePolynomial build_g(const CounterexampleSpec& spec) {
    const Polynomial t2 = Polynomial::monomial(2);
    const Polynomial inner = t2 - spec.epsilon * (t2 * build_h(spec.t0));
    PiecewisePolynomial g({spec.t0}, {inner, t2});
    g.require_smoothness(3);
    return g;
}

PiecewisePolynomial build_q(const CounterexampleSpec& spec) { return inverse_convert(build_g(spec), 2); }

Polynomial r_polynomial() { return {0.0, -2.0, 16.0, -34.0, 21.0}; }
Polynomial r3_polynomial() { return {-2.0, 16.0, -34.0, 21.0}; }

RExtremaReport analyze_R() {
    RExtremaReport rep;
    rep.r = r_polynomial();
    rep.r3 = r3_polynomial();
    rep.factorization_ok = rep.r == rep.r3 * Polynomial{0.0, 1.0};
    rep.r3_at_0 = rep.r3(0.0);
    rep.r3_at_1 = rep.r3(1.0);

    const Polynomial d1 = derivative(rep.r3);
    const Polynomial d2 = derivative(d1);
    std::vector<double> crit;
    for (double c : positive_roots(d1, 1e-15))
        if (c < 1.0) crit.push_back(c);
    if (crit.size() != 2) throw std::logic_error("analyze_R: expected two critical points of R3 in (0,1)");
    for (double c : crit) (d2(c) < 0 ? rep.tau_max : rep.tau_min) = c;

    rep.r3_max = rep.r3(rep.tau_max);
    rep.r3_min = rep.r3(rep.tau_min);
    rep.r_at_tau_max = rep.r(rep.tau_max);
    rep.r_at_tau_min = rep.r(rep.tau_min);
    rep.r3_sup_on_unit = std::max({rep.r3_at_0, rep.r3_max, rep.r3_min, rep.r3_at_1});

    rep.r_sup_on_grid = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) rep.r_sup_on_grid = std::max(rep.r_sup_on_grid, rep.r(i / 1000.0));

    // R3 <= 1 on [0,1] from its extrema; then R = tau R3 <= tau <= 1
    rep.bounded_by_one = rep.factorization_ok && rep.r3_sup_on_unit <= 1.0 && rep.r_sup_on_grid <= 1.0;
    return rep;
}

std::vector<double> default_premise_grid(double t0) {
    std::vector<double> grid;
    constexpr int kPoints = 200;
    for (int i = 0; i < kPoints; ++i) grid.push_back(std::pow(10.0, -3.0 + 6.0 * i / (kPoints - 1)));
    grid.push_back(t0 - 1e-6);
    grid.push_back(t0 + 1e-6);
    std::sort(grid.begin(), grid.end());
    return grid;
}

PremiseReport check_premise(const CounterexampleSpec& spec, std::span<const double> grid, double tol) {
    PremiseReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    const PiecewisePolynomial g = build_g(spec);
    const PiecewisePolynomial q = build_q(spec);
    const double alpha = spec.params.alpha;
    const int n = spec.params.n;

    auto fail = [&rep](double t, const std::string& what) {
        std::ostringstream os;
        os.precision(10);
        os << "t = " << t << ": " << what;
        rep.failures.push_back(os.str());
    };

    for (double t : grid) {
        const double bound = std::pow(t, alpha);
        const double gt = g(t);
        if (gt < 0.0 || gt > bound * (1.0 + 1e-12)) {
            rep.analytic_ok = false;
            fail(t, "spline leaves [0, t^alpha]");
        }

        QuadResult lhs;
        try {
            lhs = direct_convert(q, n, t, tol * bound);
        } catch (const std::exception& e) {
            rep.numeric_ok = false;
            fail(t, e.what());
            continue;
        }
        const PremisePoint pt{t, gt, lhs.value / t, bound / t - lhs.value / t, lhs.abs_error_estimate / t};
        rep.worst_margin = std::min(rep.worst_margin, pt.margin);
        if (pt.margin < -(10.0 * pt.quad_error + 1e-12 * bound / t)) {
            rep.numeric_ok = false;
            fail(t, "direct conversion exceeds t^(alpha-1)");
        }
        rep.points.push_back(pt);
    }
    if (rep.points.empty()) rep.worst_margin = 0.0;
    rep.ok = rep.analytic_ok && rep.numeric_ok;
    return rep;
}

namespace {

// int_0^t0 Phi_1(2,t) t^2 h(t) dt, negative since Phi_1 < 0 there.
QuadResult modified_region_integral(const CounterexampleSpec& spec, double tol) {
    const TransitionFunction tf = transition_for(spec.params);
    const Polynomial h = build_h(spec.t0);
    return integrate([&](double t) { return tf(t) * t * t * h(t); }, 0.0, spec.t0, tol);
}

}  // namespace

QuadResult delta_I(const CounterexampleSpec& spec, double tol) {
    if (spec.epsilon == 0.0) return {0.0, 0.0, 1};
    const QuadResult unit = modified_region_integral(spec, tol / spec.epsilon);
    return {-spec.epsilon * unit.value, spec.epsilon * unit.abs_error_estimate, unit.subdivisions};
}

LhsReport lhs_integral(const CounterexampleSpec& spec, double tol) {
    const PiecewisePolynomial q = build_q(spec);
    const double alpha = spec.params.alpha;
    auto conclusion = [&](double t) { return q(t) * phi_eval(alpha, t); };

    LhsReport rep;
    rep.direct = integrate(conclusion, 0.0, spec.t0, 0.5 * tol) + integrate_halfline(conclusion, spec.t0, 0.5 * tol);

    const TransitionFunction tf = transition_for(spec.params);
    auto weighted = [&](double t) { return tf(t) * std::pow(t, alpha); };
    const QuadResult whole =
        integrate(weighted, 0.0, spec.t0, 0.25 * tol) + integrate_halfline(weighted, spec.t0, 0.25 * tol);
    const QuadResult dI = delta_I(spec, 0.5 * tol);
    rep.via_split = whole + dI;
    rep.difference = rep.direct.value - rep.via_split.value;
    return rep;
}

bool VerificationReport::verified() const {
    return failures.empty() && premise_ok && bound_ok && margin_matches_delta_I &&
           (epsilon == 0.0 || conjecture_violated);
}

VerificationReport verify(const CounterexampleSpec& spec, double tol) {
    VerificationReport rep;
    rep.params = spec.params;
    rep.epsilon = spec.epsilon;

    auto stage = [&rep](const char* name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            rep.failures.push_back(std::string(name) + ": " + e.what());
        }
    };

    stage("premise", [&] {
        const auto grid = default_premise_grid(spec.t0);
        const PremiseReport p = check_premise(spec, grid, tol);
        rep.premise_ok = p.ok;
        rep.premise_worst_margin = p.worst_margin;
        for (const auto& f : p.failures) rep.failures.push_back("premise: " + f);
    });

    rep.rhs_conjecture = closed_form_total(spec.params);
    bool have_lhs = false, have_delta = false, have_c = false;
    stage("lhs", [&] {
        const LhsReport l = lhs_integral(spec, tol);
        rep.lhs = l.direct;
        rep.lhs_split = l.via_split;
        have_lhs = true;
    });
    stage("delta_I", [&] {
        rep.delta_I = delta_I(spec, tol);
        have_delta = true;
    });
    stage("constants", [&] {
        rep.c_upper = compute_constants(spec.params, tol).c_upper;
        have_c = true;
    });

    if (have_lhs) {
        rep.violation_margin = rep.lhs.value - rep.rhs_conjecture;
        rep.conjecture_violated = rep.violation_margin > rep.lhs.abs_error_estimate;
    }
    if (have_lhs && have_delta) {
        const double slack =
            rep.lhs.abs_error_estimate + rep.delta_I.abs_error_estimate + 64 * std::numeric_limits<double>::epsilon() *
                                                                            rep.rhs_conjecture;
        rep.margin_matches_delta_I = std::abs(rep.violation_margin - rep.delta_I.value) <= slack;
        if (!rep.margin_matches_delta_I) rep.failures.push_back("violation margin differs from delta I");
    }
    if (have_lhs && have_c) {
        rep.bound_ok = rep.lhs.value <= rep.c_upper;
        if (!rep.bound_ok) rep.failures.push_back("lhs exceeds C(n, alpha)");
    }
    if (spec.epsilon > 0.0 && have_lhs && !rep.conjecture_violated)
        rep.failures.push_back("conjectured bound not exceeded for epsilon > 0");
    return rep;
}

}  // namespace khab
