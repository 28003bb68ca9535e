#include "khab/constants.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace khab {

double closed_form_total(const Params& p) {
    validate(p);
    double prod = 1.0;
    for (int k = 1; k <= p.n - 1; ++k) prod *= 1.0 + p.alpha / k;
    return std::numbers::pi * p.alpha * prod;
}

namespace {

void require(bool cond, const char* what, double lhs, double rhs, double slack) {
    if (cond) return;
    std::ostringstream os;
    os.precision(12);
    os << "constants: " << what << " violated (" << lhs << " vs " << rhs << ", slack " << slack << ")";
    throw InvariantViolation(os.str());
}

}  // namespace

ConstantsReport compute_constants(const Params& p, double tol) {
    validate(p);
    if (!(tol > 0)) throw std::invalid_argument("compute_constants: tol must be positive");

    const TransitionFunction tf = transition_for(p);
    const SignPartition part = sign_partition(tf, 1e-15);
    const double alpha = p.alpha;
    auto integrand = [&tf, alpha](double t) { return tf(t) * std::pow(t, alpha); };

    ConstantsReport r;
    r.params = p;
    r.closed_form_total = closed_form_total(p);
    r.boundary_ts = part.boundary_ts;

    const auto intervals = part.intervals();
    QuadOptions opts;
    opts.abs_tol = tol / static_cast<double>(intervals.size());
    opts.singular = Singular::both;
    for (const auto& iv : intervals) {
        const QuadResult q = std::isinf(iv.hi) ? integrate_halfline(integrand, iv.lo, opts)
                                               : integrate(integrand, iv.lo, iv.hi, opts);
        r.pieces.push_back({iv, q});
        if (iv.sign == Sign::positive) {
            r.c_upper += q.value;
            r.c_upper_err += q.abs_error_estimate;
        } else {
            r.m_minus_integral += q.value;
            r.m_minus_err += q.abs_error_estimate;
        }
    }

    QuadOptions whole;
    whole.abs_tol = tol;
    whole.singular = Singular::both;
    r.total_integral = integrate_halfline(integrand, 0.0, whole);
    r.decomposition_residual = r.c_upper + r.m_minus_integral - r.closed_form_total;

    const double floor = 1e-13 * r.closed_form_total;
    const double slack = r.c_upper_err + r.m_minus_err + floor;
    require(r.m_minus_integral <= r.m_minus_err + floor, "M- integral <= 0", r.m_minus_integral, 0.0, slack);
    require(r.closed_form_total <= r.c_upper + slack, "closed form <= C(n,alpha)", r.closed_form_total, r.c_upper,
            slack);
    require(std::abs(r.decomposition_residual) <= slack, "C + M- = closed form", r.c_upper + r.m_minus_integral,
            r.closed_form_total, slack);
    const double total_slack = r.total_integral.abs_error_estimate + floor;
    require(std::abs(r.total_integral.value - r.closed_form_total) <= total_slack, "total integral = closed form",
            r.total_integral.value, r.closed_form_total, total_slack);
    return r;
}

}  // namespace khab
