#pragma once

#include <span>
#include <string>
#include <vector>

#include "khab/piecewise.hpp"
#include "khab/quad.hpp"

namespace khab {

/// g(t) = int_0^t A_{n-1}(y/t) q(y) dy, computed as t * int_0^1 A_{n-1}(x) q(t x) dx.
///
/// The logarithmic singularity of the kernel at x = 0 is flagged for the
/// quadrature; `breakpoints` (in y) mark kinks of q and split the range.
QuadResult direct_convert(const Integrand& q, int n, double t, double tol,
                          std::span<const double> breakpoints = {});

QuadResult direct_convert(const PiecewisePolynomial& q, int n, double t, double tol);

/// q(t) = d^n/dt^n [ t^n g'(t) / (n-1)! ], exact per piece.
///
/// g must have matching derivatives of order 0..n+1 at every breakpoint;
/// otherwise SmoothnessError names the breakpoint and the order.
PiecewisePolynomial inverse_convert(const PiecewisePolynomial& g, int n);

struct RoundTripPoint {
    double t;
    double direct;    // direct_convert(q)(t)
    double expected;  // g(t)
    double quad_error;
};

struct RoundTripReport {
    std::vector<RoundTripPoint> points;
    double max_deviation = 0.0;
    double worst_t = 0.0;
    bool ok = true;
    std::vector<std::string> failures;
};

/// Pushes q through direct_convert at every grid point and compares with
/// g; a point fails when |direct - g(t)| > tol.
RoundTripReport roundtrip_check(const PiecewisePolynomial& q, const PiecewisePolynomial& g, int n,
                                std::span<const double> grid, double tol);

}  // namespace khab
