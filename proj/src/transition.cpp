#include "khab/transition.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "khab/kernel.hpp"

namespace khab {

void validate(const Params& p) {
    if (p.n < 1) throw std::invalid_argument("params: n must be a positive integer, got " + std::to_string(p.n));
    if (!(p.alpha > 0) || !std::isfinite(p.alpha))
        throw std::invalid_argument("params: alpha must be positive, got " + std::to_string(p.alpha));
}

double phi_eval(double alpha, double t) {
    if (!(t > 0)) throw std::domain_error("phi: t must be positive");
    const double lz = 2.0 * alpha * std::log(t);
    // ln(1 + 1/z) = -ln z + ln(1 + z) when z < 1
    if (lz < 0) return -lz + std::log1p(std::exp(lz));
    return std::log1p(std::exp(-lz));
}

Polynomial phi_derivative_poly(int m, double alpha) {
    if (m < 1) throw std::invalid_argument("phi_derivative_poly: m must be >= 1");
    if (!(alpha > 0)) throw std::invalid_argument("phi_derivative_poly: alpha must be positive");

    const Polynomial one_plus_z{1.0, 1.0};
    const Polynomial z{0.0, 1.0};
    Polynomial q{-2.0 * alpha};
    for (int k = 1; k < m; ++k) {
        const Polynomial inner = 2.0 * alpha * (z * derivative(q)) - static_cast<double>(k) * q;
        q = one_plus_z * inner - (2.0 * alpha * k) * (z * q);
    }
    return q;
}

TransitionFunction::TransitionFunction(int order, double alpha, Polynomial p)
    : order_(order), alpha_(alpha), p_(std::move(p)) {
    if (order_ < 0) throw std::invalid_argument("transition: order must be >= 0");
    if (!(alpha_ > 0)) throw std::invalid_argument("transition: alpha must be positive");
    if (p_.degree() != order_)
        throw std::logic_error("transition: P has degree " + std::to_string(p_.degree()) + ", expected " +
                               std::to_string(order_));
    std::vector<double> rev(p_.coeffs().rbegin(), p_.coeffs().rend());
    p_rev_ = Polynomial(std::move(rev));
}

double TransitionFunction::operator()(double t) const {
    if (!(t > 0)) throw std::domain_error("transition: t must be positive");
    const double lz = 2.0 * alpha_ * std::log(t);
    const double pre = 4.0 * alpha_ * alpha_ / t;
    if (lz <= 0) {
        const double z = std::exp(lz);
        return pre * z * p_(z) / std::pow(1.0 + z, exponent());
    }
    // z > 1: divide through by z^(order+2) and work in v = 1/z
    const double v = std::exp(-lz);
    return pre * v * p_rev_(v) / std::pow(1.0 + v, exponent());
}

TransitionFunction build_transition(int order, double alpha) {
    if (order < 0) throw std::invalid_argument("build_transition: order must be >= 0");
    const Polynomial q = phi_derivative_poly(order + 1, alpha);

    // (-t)^(m)/order! * t^(-m) Q(z)/(1+z)^m = (-1)^m/order! * Q(z)/(1+z)^m with m = order+1;
    // -d/dt of that is (-1)^order/order! * (2 alpha z/t) [(1+z)Q' - m Q] / (1+z)^(m+1).
    const Polynomial numer = Polynomial{1.0, 1.0} * derivative(q) - static_cast<double>(order + 1) * q;
    const double factorial = std::tgamma(order + 1.0);
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    Polynomial p = numer * (sign / (factorial * 2.0 * alpha));
    return TransitionFunction(order, alpha, std::move(p));
}

TransitionFunction transition_for(const Params& p) {
    validate(p);
    return build_transition(p.n - 1, p.alpha);
}

double transition_eval(const TransitionFunction& tf, double t) { return tf(t); }

std::vector<SignInterval> SignPartition::intervals() const {
    std::vector<SignInterval> out;
    double lo = 0.0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        const double hi = i < boundary_ts.size() ? boundary_ts[i] : std::numeric_limits<double>::infinity();
        out.push_back({lo, hi, signs[i]});
        lo = hi;
    }
    return out;
}

SignPartition sign_partition(const TransitionFunction& tf, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("sign_partition: tol must be positive");
    const Polynomial& p = tf.p_poly();
    const std::vector<double> zs = positive_roots(p, tol);

    SignPartition part;
    for (double z : zs) part.boundary_ts.push_back(std::exp(std::log(z) / (2.0 * tf.alpha())));

    auto label = [&p](double z) { return p(z) < 0 ? Sign::negative : Sign::positive; };
    if (zs.empty()) {
        part.signs.push_back(label(1.0));
        return part;
    }
    part.signs.push_back(label(0.5 * zs.front()));
    for (std::size_t i = 0; i + 1 < zs.size(); ++i) part.signs.push_back(label(std::sqrt(zs[i] * zs[i + 1])));
    part.signs.push_back(label(2.0 * zs.back()));
    return part;
}

BridgeResult bridge_identity(const Params& p, double y, double tol) {
    validate(p);
    if (!(y > 0)) throw std::domain_error("bridge_identity: y must be positive");
    const TransitionFunction tf = transition_for(p);
    const KernelSpec kernel{p.n - 1};

    BridgeResult r;
    r.y = y;
    r.lhs = integrate_halfline([&](double t) { return tf(t) * kernel_eval(kernel, std::min(1.0, y / t)); }, y, tol);
    r.target = phi_eval(p.alpha, y);
    r.residual = r.lhs.value - r.target;
    return r;
}

}  // namespace khab
