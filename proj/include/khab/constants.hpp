#pragma once

#include <stdexcept>
#include <vector>

#include "khab/quad.hpp"
#include "khab/transition.hpp"

namespace khab {

class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// pi * alpha * prod_{k=1}^{n-1} (1 + alpha/k); the empty product is 1.
double closed_form_total(const Params& p);

struct IntervalIntegral {
    SignInterval interval;
    QuadResult integral;  // of Phi_{n-1}(alpha,t) t^alpha over the interval
};

struct ConstantsReport {
    Params params;
    double c_upper = 0.0;  // integral over M+
    double c_upper_err = 0.0;
    double closed_form_total = 0.0;
    double m_minus_integral = 0.0;  // integral over M-, <= 0
    double m_minus_err = 0.0;
    QuadResult total_integral;  // over (0, inf) in one pass
    double decomposition_residual = 0.0;  // c_upper + m_minus - closed_form_total
    std::vector<double> boundary_ts;
    std::vector<IntervalIntegral> pieces;
};

/// Integrates Phi_{n-1}(alpha,t) t^alpha separately over every certified sign
/// interval and sums them into M+ and M-. Throws InvariantViolation if the
/// sums contradict closed_form_total <= c_upper, m_minus <= 0, or the
/// decomposition c_upper + m_minus = closed_form_total beyond the combined
/// quadrature error.
ConstantsReport compute_constants(const Params& p, double tol = 1e-9);

}  // namespace khab
