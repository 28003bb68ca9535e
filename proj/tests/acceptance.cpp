// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "khab/cli.hpp"
#include "khab/constants.hpp"
#include "khab/conversion.hpp"
#include "khab/counterexample.hpp"
#include "khab/report_json.hpp"
#include "oracles.hpp"

using namespace khab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool ok;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct CliRun {
    int code;
    json doc;
};

CliRun cli_json(std::vector<std::string> args) {
    args.insert(args.begin(), "khab");
    args.push_back("--format");
    args.push_back("json");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    CliRun r{code, {}};
    if (code == 0) r.doc = json::parse(out.str());
    return r;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

Outcome c22() {
    const auto start = std::chrono::steady_clock::now();
    const CliRun r = cli_json({"constants", "--n", "2", "--alpha", "2"});
    const double secs = seconds_since(start);
    if (r.code != 0) return {false, fmt("exit code %d", r.code)};
    const double c = r.doc.at("c_upper").get<double>();
    return {std::abs(c - 19.65507202) <= 1e-6 && secs < 5.0, fmt("C(2,2) = %.10f, %.3f s", c, secs)};
}

Outcome closed_form_total_matches() {
    const TransitionFunction tf = transition_for(Params{2, 2.0});
    const QuadResult whole = integrate_halfline([&](double t) { return tf(t) * t * t; }, 0.0, 1e-11);
    const ConstantsReport cr = compute_constants(Params{2, 2.0});
    const double d1 = std::abs(whole.value - 6 * kPi);
    const double d2 = std::abs(cr.total_integral.value - 6 * kPi);
    return {d1 <= 1e-8 && d2 <= 1e-8 && std::abs(cr.closed_form_total - 6 * kPi) <= 1e-14,
            fmt("integral = %.12f, 6 pi = %.12f, |diff| = %.2e", whole.value, 6 * kPi, std::max(d1, d2))};
}

Outcome delta_i() {
    const CliRun r = cli_json({"counterexample", "--epsilon", "1"});
    if (r.code != 0) return {false, fmt("exit code %d", r.code)};
    const double di = r.doc.at("delta_I").at("value").get<double>();
    const double di_err = r.doc.at("delta_I").at("err").get<double>();
    const double margin = r.doc.at("violation_margin").get<double>();
    const double lhs_err = r.doc.at("lhs").at("err").get<double>();
    const double gap = std::abs(margin - di);
    return {std::abs(di - 0.01299443) <= 1e-6 && gap <= lhs_err + di_err,
            fmt("delta I = %.11f, margin - delta I = %.2e (combined err %.2e), exit 0", di, gap, lhs_err + di_err)};
}

Outcome bound_chain() {
    const LhsReport lhs = lhs_integral(make_counterexample(1.0));
    const double c = compute_constants(Params{2, 2.0}).c_upper;
    const double v = lhs.direct.value;
    return {std::abs(v - 18.86255035) <= 1e-8 && v <= c && 6 * kPi <= c,
            fmt("6 pi = %.8f <= lhs = %.10f <= C = %.8f", 6 * kPi, v, c)};
}

Outcome p1_formula() {
    double worst_coef = 0.0;
    for (double a : {0.5, 1.0, 2.0, 3.7}) {
        const Polynomial p = build_transition(1, a).p_poly();
        if (p.degree() != 1) return {false, fmt("degree %d at alpha %g", p.degree(), a)};
        worst_coef = std::max({worst_coef, std::abs(p[0] - (1 - 2 * a)), std::abs(p[1] - (2 * a + 1))});
    }
    const TransitionFunction tf = build_transition(1, 2.0);
    double worst_rel = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = std::pow(10.0, -3.0 + 6.0 * i / 99);
        const double z = t * t * t * t;
        const double closed = 16 * t * t * t * (5 * z - 3) / std::pow(1 + z, 3);
        worst_rel = std::max(worst_rel, std::abs(tf(t) - closed) / std::abs(closed));
    }
    return {worst_coef <= 1e-12 && worst_rel <= 1e-12,
            fmt("max coefficient error %.2e, max relative error of Phi_1(2,.) %.2e", worst_coef, worst_rel)};
}

Outcome bridge() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n)
        for (double a : {0.5, 1.0, 2.0})
            for (double y : {0.25, 0.5, 1.0, 2.0, 4.0})
                worst = std::max(worst, std::abs(bridge_identity(Params{n, a}, y, 1e-10).residual));
    const double secs = seconds_since(start);
    return {worst <= 1e-8 && secs < 30.0, fmt("max residual %.2e over 45 cases, %.3f s", worst, secs)};
}

Outcome round_trip() {
    const CounterexampleSpec spec = make_counterexample(1.0);
    std::vector<double> grid;
    for (int i = 1; i <= 50; ++i) grid.push_back(2.0 * spec.t0 * i / 50);
    const RoundTripReport r = roundtrip_check(build_q(spec), build_g(spec), 2, grid, 1e-7);
    return {r.ok && r.points.size() == 50, fmt("max |direct(q) - g| = %.2e at t = %.4f", r.max_deviation, r.worst_t)};
}

Outcome extrema() {
    const RExtremaReport r = analyze_R();
    const double s = std::sqrt(37.0);
    const double e = std::max({std::abs(r.tau_max - (34 - 2 * s) / 63), std::abs(r.tau_min - (34 + 2 * s) / 63),
                               std::abs(r.r3_max - (394 + 592 * s) / 11907),
                               std::abs(r.r3_min - (394 - 592 * s) / 11907)});
    return {e <= 1e-10 && r.bounded_by_one,
            fmt("tau = %.12f, %.12f; max error %.2e; R <= 1 on [0,1]: %s", r.tau_max, r.tau_min, e,
                r.bounded_by_one ? "yes" : "no")};
}

Outcome root_t0() {
    const SignPartition part = sign_partition(transition_for(Params{2, 2.0}), 1e-15);
    if (part.boundary_ts.size() != 1) return {false, fmt("%zu boundaries", part.boundary_ts.size())};
    const double d = std::abs(part.boundary_ts[0] - std::pow(0.6, 0.25));
    return {d <= 1e-12, fmt("t0 = %.15f, error %.2e", part.boundary_ts[0], d)};
}

Outcome small_alpha() {
    double worst_m = 0.0, worst_c = 0.0;
    for (const Params p : {Params{2, 0.25}, Params{2, 0.5}, Params{3, 0.5}}) {
        const ConstantsReport r = compute_constants(p);
        worst_m = std::max(worst_m, std::abs(r.m_minus_integral));
        worst_c = std::max(worst_c, std::abs(r.c_upper - r.closed_form_total));
    }
    return {worst_m <= 1e-9 && worst_c <= 1e-8,
            fmt("max |M- integral| = %.2e, max |C - closed form| = %.2e", worst_m, worst_c)};
}

Outcome recurrence_oracle() {
    double worst = 0.0;
    for (double a : {0.5, 2.0})
        for (int m = 1; m <= 4; ++m)
            for (double t : {0.5, 1.0, 2.0}) {
                const double z = std::pow(t, 2 * a);
                const double sym = phi_derivative_poly(m, a)(z) / (std::pow(t, m) * std::pow(1 + z, m));
                const double fd =
                    oracle::richardson_derivative([a](oracle::Real s) { return oracle::phi(a, s); }, t, m, 0.1 * t);
                worst = std::max(worst, std::abs(sym - fd) / std::abs(fd));
            }
    return {worst <= 1e-5, fmt("max relative deviation %.2e", worst)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"C(2,2) from the constants command", c22},
        {"closed-form total 6 pi", closed_form_total_matches},
        {"delta I and violation margin", delta_i},
        {"bound chain 6 pi <= lhs <= C(2,2)", bound_chain},
        {"P_1 coefficients and Phi_1(2,.)", p1_formula},
        {"bridge identity", bridge},
        {"conversion round trip", round_trip},
        {"R extrema and R <= 1", extrema},
        {"sign boundary t0", root_t0},
        {"alpha <= 1/2 consistency", small_alpha},
        {"derivative recurrence vs finite differences", recurrence_oracle},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failed;
        std::printf("%s [%2zu] %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
