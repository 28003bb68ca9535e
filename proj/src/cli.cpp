#include "khab/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <vector>

#include "khab/constants.hpp"
#include "khab/conversion.hpp"
#include "khab/counterexample.hpp"
#include "khab/report_json.hpp"
#include "khab/transition.hpp"

namespace khab {

namespace {

constexpr double kDefaultTol = 1e-9;
constexpr double kIdentityThreshold = 1e-8;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double default_tol() {
    const char* env = std::getenv("KHAB_TOL");
    if (env == nullptr || *env == '\0') return kDefaultTol;
    double v = 0.0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc{} || ptr != end || !(v > 0) || !std::isfinite(v))
        throw UsageError(std::string("KHAB_TOL must be a positive number, got '") + env + "'");
    return v;
}

std::string csv_number(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_csv(std::ostream& out, const std::vector<std::pair<double, double>>& rows) {
    out << "x,value\n";
    for (const auto& [x, v] : rows) out << csv_number(x) << ',' << csv_number(v) << '\n';
}

const char* sign_label(Sign s) { return s == Sign::positive ? "+" : "-"; }

struct Common {
    std::string format = "text";
    double tol = kDefaultTol;
    bool tol_given = false;
};

void add_format(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

void add_tol(CLI::App* cmd, Common& c) {
    cmd->add_option_function<double>(
           "--tol",
           [&c](double v) {
               c.tol = v;
               c.tol_given = true;
           },
           "Absolute quadrature tolerance (default 1e-9 or $KHAB_TOL)")
        ->check(CLI::PositiveNumber);
}

void add_params(CLI::App* cmd, Params& p) {
    cmd->add_option("--n", p.n, "Conjecture order n >= 1")->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", p.alpha, "Exponent alpha > 0")->check(CLI::PositiveNumber);
}

// --- transition -----------------------------------------------------------

int cmd_transition(const Params& p, const std::vector<double>& ts, const Common& c, std::ostream& out) {
    const TransitionFunction tf = transition_for(p);
    const SignPartition part = sign_partition(tf, 1e-15);
    std::vector<std::pair<double, double>> rows;
    for (double t : ts) rows.emplace_back(t, tf(t));

    if (c.format == "csv") {
        write_csv(out, rows);
    } else if (c.format == "json") {
        json j;
        j["params"] = {{"n", p.n}, {"alpha", p.alpha}};
        j["order"] = tf.order();
        j["p_coeffs"] = tf.p_poly().coeffs();
        j["boundary_ts"] = part.boundary_ts;
        std::vector<std::string> signs;
        for (Sign s : part.signs) signs.emplace_back(sign_label(s));
        j["signs"] = signs;
        json vals = json::array();
        for (const auto& [t, v] : rows) vals.push_back({{"t", t}, {"phi", v}});
        j["values"] = vals;
        out << j.dump(2) << '\n';
    } else {
        out << "transition function Phi_" << tf.order() << "(alpha, t), n = " << p.n << ", alpha = " << p.alpha
            << '\n';
        out << "P_" << tf.order() << " coefficients (ascending in z): " << to_string(tf.p_poly()) << '\n';
        out << "sign boundaries t:";
        if (part.boundary_ts.empty()) out << " none";
        for (double b : part.boundary_ts) out << ' ' << b;
        out << "\nsigns:";
        for (Sign s : part.signs) out << ' ' << sign_label(s);
        out << '\n';
        for (const auto& [t, v] : rows) out << "Phi(" << t << ") = " << v << '\n';
    }
    return kExitOk;
}

// --- constants ------------------------------------------------------------

int cmd_constants(const Params& p, const Common& c, std::ostream& out, std::ostream& err) {
    ConstantsReport r;
    try {
        r = compute_constants(p, c.tol);
    } catch (const std::exception& e) {
        err << "constants: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
    if (c.format == "json") {
        out << json(r).dump(2) << '\n';
    } else if (c.format == "csv") {
        out << "quantity,value\n";
        out << "c_upper," << csv_number(r.c_upper) << '\n';
        out << "closed_form_total," << csv_number(r.closed_form_total) << '\n';
        out << "m_minus_integral," << csv_number(r.m_minus_integral) << '\n';
        out << "decomposition_residual," << csv_number(r.decomposition_residual) << '\n';
    } else {
        out << "n = " << p.n << ", alpha = " << p.alpha << '\n';
        out << "C(n, alpha)            = " << r.c_upper << "  (err " << r.c_upper_err << ")\n";
        out << "closed-form total      = " << r.closed_form_total << '\n';
        out << "integral over M-       = " << r.m_minus_integral << "  (err " << r.m_minus_err << ")\n";
        out << "integral over (0, inf) = " << r.total_integral.value << "  (err "
            << r.total_integral.abs_error_estimate << ")\n";
        out << "decomposition residual = " << r.decomposition_residual << '\n';
        out << "sign boundaries t:";
        if (r.boundary_ts.empty()) out << " none";
        for (double b : r.boundary_ts) out << ' ' << b;
        out << '\n';
    }
    return kExitOk;
}

// --- counterexample -------------------------------------------------------

void print_verification(const VerificationReport& r, std::ostream& out) {
    out << "counterexample n = " << r.params.n << ", alpha = " << r.params.alpha << ", epsilon = " << r.epsilon
        << '\n';
    out << "premise holds          : " << (r.premise_ok ? "yes" : "NO") << "  (worst margin "
        << r.premise_worst_margin << ")\n";
    out << "lhs integral           = " << r.lhs.value << "  (err " << r.lhs.abs_error_estimate << ")\n";
    out << "lhs via split          = " << r.lhs_split.value << '\n';
    out << "conjectured bound      = " << r.rhs_conjecture << '\n';
    out << "delta I                = " << r.delta_I.value << "  (err " << r.delta_I.abs_error_estimate << ")\n";
    out << "violation margin       = " << r.violation_margin << '\n';
    out << "C(n, alpha)            = " << r.c_upper << "  (lhs <= C: " << (r.bound_ok ? "yes" : "NO") << ")\n";
    for (const auto& f : r.failures) out << "FAILURE: " << f << '\n';
    if (!r.verified())
        out << "VERIFICATION FAILED\n";
    else if (r.conjecture_violated)
        out << "CONJECTURE VIOLATED\n";
    else
        out << "equality case, no violation\n";
}

int cmd_counterexample(double epsilon, const Common& c, std::ostream& out) {
    const VerificationReport r = verify(make_counterexample(epsilon), c.tol);
    if (c.format == "json") {
        out << json(r).dump(2) << '\n';
    } else if (c.format == "csv") {
        out << "quantity,value\n";
        out << "lhs," << csv_number(r.lhs.value) << '\n';
        out << "rhs_conjecture," << csv_number(r.rhs_conjecture) << '\n';
        out << "delta_I," << csv_number(r.delta_I.value) << '\n';
        out << "c_upper," << csv_number(r.c_upper) << '\n';
        out << "violation_margin," << csv_number(r.violation_margin) << '\n';
    } else {
        print_verification(r, out);
    }
    return r.verified() ? kExitOk : kExitVerificationFailed;
}

// --- identity -------------------------------------------------------------

int cmd_identity(const Params& p, const std::vector<double>& ys, const Common& c, std::ostream& out,
                 std::ostream& err) {
    std::vector<BridgeResult> rows;
    try {
        for (double y : ys) rows.push_back(bridge_identity(p, y, 0.1 * std::min(c.tol, kIdentityThreshold)));
    } catch (const std::exception& e) {
        err << "identity: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
    bool ok = true;
    for (const auto& r : rows) ok = ok && std::abs(r.residual) <= kIdentityThreshold;

    if (c.format == "json") {
        json j;
        j["params"] = {{"n", p.n}, {"alpha", p.alpha}};
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"y", r.y}, {"lhs", r.lhs}, {"target", r.target}, {"residual", r.residual}});
        j["rows"] = arr;
        j["ok"] = ok;
        out << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        std::vector<std::pair<double, double>> csv;
        for (const auto& r : rows) csv.emplace_back(r.y, r.residual);
        write_csv(out, csv);
    } else {
        out << "bridge identity, n = " << p.n << ", alpha = " << p.alpha << '\n';
        for (const auto& r : rows)
            out << "y = " << r.y << ": integral = " << r.lhs.value << ", ln(1+y^-2a) = " << r.target
                << ", residual = " << r.residual << '\n';
        out << (ok ? "identity holds" : "IDENTITY RESIDUAL TOO LARGE") << '\n';
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

// --- convert --------------------------------------------------------------

int cmd_convert(const std::string& path, int n, bool direct, const std::vector<double>& ts, const Common& c,
                std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    PiecewisePolynomial input;
    try {
        input = json::parse(in).get<PiecewisePolynomial>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed piecewise polynomial JSON: ") + e.what());
    }

    if (!direct) {
        const PiecewisePolynomial q = inverse_convert(input, n);
        if (c.format == "text") {
            out << "q = inverse conversion of g, n = " << n << '\n';
            for (std::size_t i = 0; i < q.pieces().size(); ++i) {
                const double lo = i == 0 ? 0.0 : q.breakpoints()[i - 1];
                out << "piece " << i << " from t = " << lo << ": " << to_string(q.pieces()[i]) << '\n';
            }
        } else {
            out << json(q).dump(2) << '\n';
        }
        return kExitOk;
    }

    std::vector<std::pair<double, double>> rows;
    std::vector<QuadResult> results;
    for (double t : ts) {
        results.push_back(direct_convert(input, n, t, c.tol));
        rows.emplace_back(t, results.back().value);
    }
    if (c.format == "csv") {
        write_csv(out, rows);
    } else if (c.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) arr.push_back({{"t", rows[i].first}, {"g", results[i]}});
        out << arr.dump(2) << '\n';
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i)
            out << "g(" << rows[i].first << ") = " << rows[i].second << "  (err "
                << results[i].abs_error_estimate << ")\n";
    }
    return kExitOk;
}

// --- plotdata -------------------------------------------------------------

struct PlotRequest {
    std::string kind = "R3";
    Params params;
    double epsilon = 1.0;
    double from = 0.0;
    double to = 1.0;
    bool from_given = false;
    bool to_given = false;
    int points = 101;
};

int cmd_plotdata(PlotRequest req, std::ostream& out) {
    std::function<double(double)> f;
    const CounterexampleSpec spec = make_counterexample(req.epsilon);
    if (req.kind == "R3") {
        f = r3_polynomial();
    } else if (req.kind == "transition") {
        if (!req.from_given) req.from = 0.1;
        if (!req.to_given) req.to = 3.0;
        if (!(req.from > 0)) throw UsageError("plotdata: transition needs --from > 0");
        f = [tf = transition_for(req.params)](double t) { return tf(t); };
    } else if (req.kind == "h") {
        f = build_h(spec.t0);
    } else if (req.kind == "g") {
        f = [g = build_g(spec)](double t) { return g(t); };
    } else {
        f = [q = build_q(spec)](double t) { return q(t); };
    }
    if (req.kind != "R3" && req.kind != "transition" && !req.to_given) req.to = 2.0;
    if (!(req.to >= req.from)) throw UsageError("plotdata: need --to >= --from");

    std::vector<std::pair<double, double>> rows;
    for (int i = 0; i < req.points; ++i) {
        const double x =
            req.points == 1 ? req.from : req.from + (req.to - req.from) * static_cast<double>(i) / (req.points - 1);
        rows.emplace_back(x, f(x));
    }
    write_csv(out, rows);
    return kExitOk;
}

// --- report ---------------------------------------------------------------

int cmd_report(const Common& c, std::ostream& out) {
    const Params p{2, 2.0};
    int code = kExitOk;
    json j;

    try {
        const ConstantsReport cr = compute_constants(p, c.tol);
        j["constants"] = cr;
        if (c.format != "json") {
            out << "== constants ==\n";
            out << "C(2,2) = " << cr.c_upper << ", closed form = " << cr.closed_form_total
                << ", M- integral = " << cr.m_minus_integral << '\n';
        }
    } catch (const std::exception& e) {
        j["constants"] = {{"error", e.what()}};
        out << "constants FAILED: " << e.what() << '\n';
        code = kExitVerificationFailed;
    }

    const VerificationReport vr = verify(make_counterexample(1.0), c.tol);
    j["counterexample"] = vr;
    if (!vr.verified()) code = kExitVerificationFailed;
    if (c.format != "json") {
        out << "== counterexample ==\n";
        print_verification(vr, out);
    }

    const RExtremaReport rr = analyze_R();
    j["r_extrema"] = {{"tau_max", rr.tau_max},           {"tau_min", rr.tau_min},
                      {"r3_max", rr.r3_max},             {"r3_min", rr.r3_min},
                      {"bounded_by_one", rr.bounded_by_one}};
    if (!rr.bounded_by_one) code = kExitVerificationFailed;
    if (c.format != "json") {
        out << "== R extrema ==\n";
        out << "tau_max = " << rr.tau_max << ", R3 = " << rr.r3_max << "; tau_min = " << rr.tau_min
            << ", R3 = " << rr.r3_min << "; R <= 1 on [0,1]: " << (rr.bounded_by_one ? "yes" : "NO") << '\n';
    }

    json ident = json::array();
    if (c.format != "json") out << "== bridge identity (n = 2, alpha = 2) ==\n";
    for (double y : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const BridgeResult b = bridge_identity(p, y, 0.1 * kIdentityThreshold);
        ident.push_back({{"y", y}, {"residual", b.residual}});
        if (std::abs(b.residual) > kIdentityThreshold) code = kExitVerificationFailed;
        if (c.format != "json") out << "y = " << y << ": residual = " << b.residual << '\n';
    }
    j["identity"] = ident;

    if (c.format == "json") out << j.dump(2) << '\n';
    return code;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kernel, transition-function and correction-constant checks for a weighted integral inequality"};
    app.require_subcommand(1);

    Common common;
    Params params;
    std::vector<double> ts{1.0};
    std::vector<double> ys{0.25, 0.5, 1.0, 2.0, 4.0};
    double epsilon = 1.0;
    std::string input;
    bool direct = false;
    PlotRequest plot;

    auto* transition = app.add_subcommand("transition", "Print P_{n-1}, sign boundaries and Phi_{n-1} values");
    add_params(transition, params);
    transition->add_option("--t", ts, "Evaluation points (repeatable)")->check(CLI::PositiveNumber);
    add_format(transition, common);

    auto* constants = app.add_subcommand("constants", "Compute C(n, alpha) and the decomposition check");
    add_params(constants, params);
    add_tol(constants, common);
    add_format(constants, common);

    auto* counter = app.add_subcommand("counterexample", "Verify the n = 2, alpha = 2 spline counterexample");
    counter->add_option("--epsilon", epsilon, "Modification depth in [0, 1]")->check(CLI::Range(0.0, 1.0));
    add_tol(counter, common);
    add_format(counter, common);

    auto* identity = app.add_subcommand("identity", "Check the kernel/transition bridge identity");
    add_params(identity, params);
    identity->add_option("--y", ys, "Points y > 0 (repeatable)")->check(CLI::PositiveNumber);
    add_tol(identity, common);
    add_format(identity, common);

    auto* convert = app.add_subcommand("convert", "Inverse (default) or direct conversion of a piecewise polynomial");
    convert->add_option("--input", input, "JSON file {breakpoints, pieces}")->required()->check(CLI::ExistingFile);
    int convert_n = 2;
    convert->add_option("--n", convert_n, "Conjecture order n >= 1")->check(CLI::PositiveNumber);
    convert->add_flag("--direct", direct, "Treat input as q and evaluate g at --t");
    convert->add_option("--t", ts, "Evaluation points for --direct")->check(CLI::PositiveNumber);
    add_tol(convert, common);
    add_format(convert, common);

    auto* plotdata = app.add_subcommand("plotdata", "Emit x,value CSV for R3, transition, g, q or h");
    plotdata->add_option("--kind", plot.kind, "Curve to sample")
        ->check(CLI::IsMember({"R3", "transition", "g", "q", "h"}));
    add_params(plotdata, plot.params);
    plotdata->add_option("--epsilon", plot.epsilon, "Spline depth for g and q")->check(CLI::Range(0.0, 1.0));
    plotdata->add_option_function<double>("--from", [&plot](double v) {
        plot.from = v;
        plot.from_given = true;
    });
    plotdata->add_option_function<double>("--to", [&plot](double v) {
        plot.to = v;
        plot.to_given = true;
    });
    plotdata->add_option("--points", plot.points, "Number of samples")->check(CLI::NonNegativeNumber);

    auto* report = app.add_subcommand("report", "Run every check for the headline case n = 2, alpha = 2");
    add_tol(report, common);
    add_format(report, common);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!common.tol_given) common.tol = default_tol();
        out << std::setprecision(10);

        if (*transition) return cmd_transition(params, ts, common, out);
        if (*constants) return cmd_constants(params, common, out, err);
        if (*counter) return cmd_counterexample(epsilon, common, out);
        if (*identity) return cmd_identity(params, ys, common, out, err);
        if (*convert) return cmd_convert(input, convert_n, direct, ts, common, out);
        if (*plotdata) return cmd_plotdata(plot, out);
        if (*report) return cmd_report(common, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "failed: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
    return kExitUsage;
}

}  // namespace khab
