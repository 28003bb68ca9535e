#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "khab/poly.hpp"

namespace khab {

/// Where two neighbouring pieces disagree.
struct SmoothnessDefect {
    std::size_t breakpoint_index;
    double t;
    int order;  // derivative order that jumps
    double left;
    double right;
};

class SmoothnessError : public std::runtime_error {
public:
    explicit SmoothnessError(const SmoothnessDefect& d);
    const SmoothnessDefect& defect() const noexcept { return defect_; }

private:
    SmoothnessDefect defect_;
};

/// Polynomial pieces on (0, b_0), [b_0, b_1), ..., [b_last, inf).
/// A breakpoint belongs to the piece on its right.
class PiecewisePolynomial {
public:
    PiecewisePolynomial() : pieces_{Polynomial{}} {}
    explicit PiecewisePolynomial(Polynomial global) : pieces_{std::move(global)} {}
    PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Polynomial> pieces);

    const std::vector<double>& breakpoints() const noexcept { return breaks_; }
    const std::vector<Polynomial>& pieces() const noexcept { return pieces_; }

    std::size_t piece_index(double t) const;
    const Polynomial& piece_at(double t) const { return pieces_[piece_index(t)]; }
    double operator()(double t) const { return piece_at(t)(t); }

    /// First jump among derivative orders 0..k, with relative tolerance
    /// |L - R| <= rel_tol * max(1, |L|, |R|).
    std::optional<SmoothnessDefect> smoothness_defect(int k, double rel_tol = 1e-9) const;

    /// Throws SmoothnessError on the first defect.
    void require_smoothness(int k, double rel_tol = 1e-9) const;

    /// Highest k <= max_order for which derivatives 0..k match everywhere;
    /// -1 if even the values jump.
    int smoothness_class(int max_order, double rel_tol = 1e-9) const;

    PiecewisePolynomial& operator*=(double s);
    /// Requires identical breakpoints.
    PiecewisePolynomial& operator+=(const PiecewisePolynomial& rhs);

private:
    std::vector<double> breaks_;
    std::vector<Polynomial> pieces_;
};

PiecewisePolynomial derivative(const PiecewisePolynomial& g, int k = 1);
PiecewisePolynomial operator*(double s, PiecewisePolynomial g);
PiecewisePolynomial operator+(PiecewisePolynomial a, const PiecewisePolynomial& b);

}  // namespace khab
