#pragma once

#include <functional>
#include <stdexcept>

namespace khab {

struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int subdivisions = 1;
};

inline QuadResult operator+(const QuadResult& a, const QuadResult& b) {
    return {a.value + b.value, a.abs_error_estimate + b.abs_error_estimate,
            a.subdivisions + b.subdivisions};
}

using Integrand = std::function<double(double)>;

/// Which ends of [a, b] carry an integrable singularity (x^beta, beta > -1, or ln x).
/// Flagged ends get a geometrically graded initial partition.
enum class Singular { none, left, right, both };

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_subdivisions = 5000;
    Singular singular = Singular::none;
};

/// Thrown when the panel budget runs out; carries the best estimate reached.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadResult partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadResult& partial() const noexcept { return partial_; }

private:
    QuadResult partial_;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate is below max(abs_tol, rel_tol * |value|). Endpoints are never
/// sampled.
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts);

/// Shorthand with absolute tolerance and both endpoints flagged.
QuadResult integrate(const Integrand& f, double a, double b, double tol);

/// Integral over [a, inf): [a, T] directly and [T, inf) through t = T/s,
/// with T = a + max(1, |a|).
///
/// f must decay at least like t^(-1-delta); the caller is responsible.
QuadResult integrate_halfline(const Integrand& f, double a, const QuadOptions& opts);
QuadResult integrate_halfline(const Integrand& f, double a, double tol);

}  // namespace khab
