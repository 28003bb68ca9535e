#pragma once

#include <span>
#include <string>
#include <vector>

#include "khab/piecewise.hpp"
#include "khab/quad.hpp"
#include "khab/transition.hpp"

namespace khab {

/// The spline counterexample at n = 2, alpha = 2 with modification depth epsilon.
///
/// epsilon = 0 is accepted and gives the unmodified g = t^2 (the equality
/// case); any epsilon in (0, 1] is a genuine counterexample.
struct CounterexampleSpec {
    double epsilon = 1.0;
    Params params{2, 2.0};
    double t0 = 0.0;  // (3/5)^(1/4), the sign change of Phi_1(2, .)
};

/// Throws std::invalid_argument for epsilon outside [0, 1].
CounterexampleSpec make_counterexample(double epsilon);

/// h(t) = (t - t0)^4 / t0^4.
Polynomial build_h(double t0);

/// g = t^2 (1 - eps h) on (0, t0), t^2 from t0 on; C^3 at t0 (checked).
PiecewisePolynomial build_g(const CounterexampleSpec& spec);

/// q = inverse_convert(g, 2): 12t(1 - eps R((t0-t)/t0)) on (0, t0), 12t after.
PiecewisePolynomial build_q(const CounterexampleSpec& spec);

/// R(tau) = 21 tau^4 - 34 tau^3 + 16 tau^2 - 2 tau and its cubic factor R3.
Polynomial r_polynomial();
Polynomial r3_polynomial();

struct RExtremaReport {
    Polynomial r;
    Polynomial r3;
    bool factorization_ok = false;  // R == tau * R3
    double r3_at_0 = 0.0;
    double r3_at_1 = 0.0;
    double tau_max = 0.0;  // local max of R3 in (0,1)
    double tau_min = 0.0;  // local min of R3 in (0,1)
    double r3_max = 0.0;
    double r3_min = 0.0;
    double r_at_tau_max = 0.0;
    double r_at_tau_min = 0.0;
    double r3_sup_on_unit = 0.0;  // max of R3 over {0, tau_max, tau_min, 1}
    double r_sup_on_grid = 0.0;   // max of R over a 1001-point grid of [0,1]
    bool bounded_by_one = false;
};

RExtremaReport analyze_R();

struct PremisePoint {
    double t;
    double g;           // spline value
    double lhs_over_t;  // direct_convert(q)(t) / t
    double margin;      // t^(alpha-1) - lhs_over_t
    double quad_error;  // of lhs_over_t
};

struct PremiseReport {
    bool ok = true;
    bool analytic_ok = true;  // 0 <= g <= t^2 on the grid
    bool numeric_ok = true;   // direct conversion of q stays under t^(alpha-1)
    double worst_margin = 0.0;
    std::vector<PremisePoint> points;
    std::vector<std::string> failures;
};

/// 200 log-spaced points in [1e-3, 1e3] plus t0 -+ 1e-6.
std::vector<double> default_premise_grid(double t0);

/// Checks the premise inequality at every grid point, analytically through
/// g and numerically through the direct conversion of q. `tol` is relative
/// to t^2 for the quadrature.
PremiseReport check_premise(const CounterexampleSpec& spec, std::span<const double> grid, double tol = 1e-9);

/// delta I = -eps * int_0^t0 Phi_1(2,t) t^2 h(t) dt. The integral is computed
/// at eps = 1 and scaled.
QuadResult delta_I(const CounterexampleSpec& spec, double tol = 1e-9);

struct LhsReport {
    QuadResult direct;     // int_0^inf q(t) ln(1 + t^-4) dt
    QuadResult via_split;  // int_0^inf Phi_1 t^2 dt - eps int_0^t0 Phi_1 t^2 h dt
    double difference = 0.0;
};

LhsReport lhs_integral(const CounterexampleSpec& spec, double tol = 1e-9);

struct VerificationReport {
    Params params;
    double epsilon = 0.0;
    bool premise_ok = false;
    double premise_worst_margin = 0.0;
    QuadResult lhs;
    QuadResult lhs_split;
    double rhs_conjecture = 0.0;
    QuadResult delta_I;
    double c_upper = 0.0;
    double violation_margin = 0.0;  // lhs - rhs_conjecture
    bool margin_matches_delta_I = false;
    bool bound_ok = false;  // lhs <= c_upper
    bool conjecture_violated = false;
    std::vector<std::string> failures;

    /// Every stage passed: premise holds, lhs <= C(2,2), the margin equals
    /// delta I, and for eps > 0 the conjectured bound is exceeded.
    bool verified() const;
};

/// Runs every stage; failures are collected in the report, never thrown.
VerificationReport verify(const CounterexampleSpec& spec, double tol = 1e-9);

}  // namespace khab
