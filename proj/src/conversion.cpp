#include "khab/conversion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "khab/kernel.hpp"

namespace khab {

QuadResult direct_convert(const Integrand& q, int n, double t, double tol, std::span<const double> breakpoints) {
    if (n < 1) throw std::invalid_argument("direct_convert: n must be >= 1");
    if (!(t > 0)) throw std::domain_error("direct_convert: t must be positive");
    if (!(tol > 0)) throw std::invalid_argument("direct_convert: tol must be positive");

    std::vector<double> cuts{0.0};
    for (double b : breakpoints)
        if (b > 0 && b < t) cuts.push_back(b / t);
    cuts.push_back(1.0);

    const KernelSpec kernel{n - 1};
    auto integrand = [&](double x) { return kernel_eval(kernel, x) * q(t * x); };

    const int segments = static_cast<int>(cuts.size()) - 1;
    QuadResult total{0.0, 0.0, 0};
    for (int i = 0; i < segments; ++i) {
        QuadOptions opts;
        opts.abs_tol = tol / (t * segments);
        opts.singular = i == 0 ? Singular::left : Singular::none;
        total = total + integrate(integrand, cuts[i], cuts[i + 1], opts);
    }
    total.value *= t;
    total.abs_error_estimate *= t;
    return total;
}

QuadResult direct_convert(const PiecewisePolynomial& q, int n, double t, double tol) {
    return direct_convert([&q](double y) { return q(y); }, n, t, tol, q.breakpoints());
}

PiecewisePolynomial inverse_convert(const PiecewisePolynomial& g, int n) {
    if (n < 1) throw std::invalid_argument("inverse_convert: n must be >= 1");
    g.require_smoothness(n + 1);

    const double inv_fact = 1.0 / std::tgamma(static_cast<double>(n));
    std::vector<Polynomial> pieces;
    pieces.reserve(g.pieces().size());
    for (const auto& piece : g.pieces())
        pieces.push_back(derivative(shift_up(derivative(piece), n), n) * inv_fact);
    return PiecewisePolynomial(g.breakpoints(), std::move(pieces));
}

RoundTripReport roundtrip_check(const PiecewisePolynomial& q, const PiecewisePolynomial& g, int n,
                                std::span<const double> grid, double tol) {
    RoundTripReport report;
    for (double t : grid) {
        RoundTripPoint pt{t, 0.0, g(t), 0.0};
        try {
            const QuadResult r = direct_convert(q, n, t, 0.1 * tol);
            pt.direct = r.value;
            pt.quad_error = r.abs_error_estimate;
        } catch (const std::exception& e) {
            report.ok = false;
            report.failures.push_back("t = " + std::to_string(t) + ": " + e.what());
            continue;
        }
        const double dev = std::abs(pt.direct - pt.expected);
        if (dev >= report.max_deviation) {
            report.max_deviation = dev;
            report.worst_t = t;
        }
        if (dev > tol) {
            report.ok = false;
            std::ostringstream os;
            os.precision(10);
            os << "t = " << t << ": |direct - g| = " << dev << " exceeds " << tol;
            report.failures.push_back(os.str());
        }
        report.points.push_back(pt);
    }
    return report;
}

}  // namespace khab
