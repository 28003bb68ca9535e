#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace khab {

/// Dense real polynomial, coefficients stored in ascending degree.
///
/// The zero polynomial has no coefficients and degree -1. Trailing
/// (highest-degree) zeros are stripped on construction, so a nonzero
/// polynomial always has a nonzero leading coefficient.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    /// c * x^k
    static Polynomial monomial(int k, double c = 1.0);

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Coefficient of x^k, 0 beyond the stored range.
    double operator[](int k) const noexcept;
    double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

    double operator()(double x) const noexcept;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(double s);

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() noexcept;
    std::vector<double> coeffs_;
};

Polynomial operator+(Polynomial lhs, const Polynomial& rhs);
Polynomial operator-(Polynomial lhs, const Polynomial& rhs);
Polynomial operator-(Polynomial p);
Polynomial operator*(Polynomial lhs, const Polynomial& rhs);
Polynomial operator*(Polynomial p, double s);
Polynomial operator*(double s, Polynomial p);

/// Horner evaluation.
double eval(const Polynomial& p, double x) noexcept;

/// Formal derivative; the zero polynomial for constants.
Polynomial derivative(const Polynomial& p);

/// k-th formal derivative.
Polynomial derivative(const Polynomial& p, int k);

/// p(x) * x^k.
Polynomial shift_up(const Polynomial& p, int k);

/// Coefficients in descending order: x^deg * p(1/x).
Polynomial reversed(const Polynomial& p);

/// Euclidean division; throws std::domain_error on a zero divisor.
struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};
DivMod divmod(const Polynomial& num, const Polynomial& den);

/// Number of distinct real roots in (0, +inf) by Sturm's theorem.
///
/// Throws RootCertificationError when the Sturm chain ends in a
/// nonconstant gcd, i.e. p has (numerically) repeated roots.
int sturm_count_positive(const Polynomial& p);

class RootCertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All roots of p in (0, inf), sorted, each located to absolute accuracy tol.
///
/// Brackets come from sign changes on a geometric grid (64 points per
/// decade over [1e-8, 1e8]) refined by bisection. The count is certified
/// against a Sturm sequence; a mismatch (root outside the scan window, or
/// a pair of roots too close to be separated) raises
/// RootCertificationError. Roots closer than tol are merged.
std::vector<double> positive_roots(const Polynomial& p, double tol);

std::string to_string(const Polynomial& p);

}  // namespace khab
