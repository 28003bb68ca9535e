#pragma once

#include <vector>

#include "khab/poly.hpp"
#include "khab/quad.hpp"

namespace khab {

/// The pair (n, alpha) of the conjecture: n >= 1 integer, alpha > 0.
struct Params {
    int n = 2;
    double alpha = 2.0;
};

/// Throws std::invalid_argument unless n >= 1 and alpha > 0 (finite).
void validate(const Params& p);

/// phi(t) = ln(1 + t^(-2 alpha)), evaluated without overflow for tiny t.
double phi_eval(double alpha, double t);

/// Q_m with d^m phi/dt^m = t^(-m) Q_m(z) / (1+z)^m, z = t^(2 alpha).
///
/// Q_1 = -2 alpha and
/// Q_{m+1}(z) = (1+z)(2 alpha z Q_m'(z) - m Q_m(z)) - 2 alpha m z Q_m(z).
Polynomial phi_derivative_poly(int m, double alpha);

/// Phi_order(alpha, t) = (4 alpha^2 / t) z P(z) / (1+z)^(order+2), z = t^(2 alpha).
class TransitionFunction {
public:
    TransitionFunction(int order, double alpha, Polynomial p);

    int order() const noexcept { return order_; }
    double alpha() const noexcept { return alpha_; }
    const Polynomial& p_poly() const noexcept { return p_; }
    int exponent() const noexcept { return order_ + 2; }

    double operator()(double t) const;

private:
    int order_;
    double alpha_;
    Polynomial p_;
    Polynomial p_rev_;  // z^order * P(1/z), used for z > 1
};

/// Builds Phi_order from -d/dt((-t)^(order+1)/order! * phi^(order+1)) in
/// rational form. Throws std::logic_error if the result does not reduce
/// to the (4 alpha^2/t) z P(z)/(1+z)^(order+2) template with deg P = order.
TransitionFunction build_transition(int order, double alpha);

/// Phi_{n-1}(alpha, .), the transition function paired with the conjecture's n.
TransitionFunction transition_for(const Params& p);

/// Throws std::domain_error for t <= 0.
double transition_eval(const TransitionFunction& tf, double t);

enum class Sign { negative, positive };

struct SignInterval {
    double lo;
    double hi;  // +inf for the last interval
    Sign sign;
};

/// Partition of (0, inf) into M- (Phi < 0) and M+ (Phi >= 0).
struct SignPartition {
    std::vector<double> boundary_ts;  // roots of Phi in t, ascending
    std::vector<Sign> signs;          // one per interval, boundary_ts.size() + 1 entries

    std::vector<SignInterval> intervals() const;
};

/// Roots of P in z mapped through t = z^(1/(2 alpha)). Propagates
/// RootCertificationError from positive_roots.
SignPartition sign_partition(const TransitionFunction& tf, double tol);

struct BridgeResult {
    double y = 0.0;
    QuadResult lhs;       // int_y^inf Phi_{n-1}(alpha,t) A_{n-1}(y/t) dt
    double target = 0.0;  // ln(1 + y^(-2 alpha))
    double residual = 0.0;
};

/// Evaluates both sides of the kernel/transition bridge identity at y > 0.
BridgeResult bridge_identity(const Params& p, double y, double tol);

}  // namespace khab
