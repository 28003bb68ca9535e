#include "khab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace khab {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int k, double c) {
    if (k < 0) throw std::invalid_argument("monomial: negative degree");
    std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() noexcept {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator[](int k) const noexcept {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(k)];
}

double Polynomial::operator()(double x) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<double> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    coeffs_ = std::move(out);
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    trim();
    return *this;
}

Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
Polynomial operator-(Polynomial p) { return p *= -1.0; }
Polynomial operator*(Polynomial lhs, const Polynomial& rhs) { return lhs *= rhs; }
Polynomial operator*(Polynomial p, double s) { return p *= s; }
Polynomial operator*(double s, Polynomial p) { return p *= s; }

double eval(const Polynomial& p, double x) noexcept { return p(x); }

Polynomial derivative(const Polynomial& p) {
    const auto& c = p.coeffs();
    if (c.size() <= 1) return {};
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
    return Polynomial(std::move(d));
}

Polynomial derivative(const Polynomial& p, int k) {
    if (k < 0) throw std::invalid_argument("derivative: negative order");
    Polynomial out = p;
    for (int i = 0; i < k; ++i) out = derivative(out);
    return out;
}

Polynomial shift_up(const Polynomial& p, int k) {
    if (k < 0) throw std::invalid_argument("shift_up: negative power");
    if (p.is_zero()) return {};
    std::vector<double> c(static_cast<std::size_t>(k), 0.0);
    c.insert(c.end(), p.coeffs().begin(), p.coeffs().end());
    return Polynomial(std::move(c));
}

Polynomial reversed(const Polynomial& p) {
    std::vector<double> c(p.coeffs().rbegin(), p.coeffs().rend());
    return Polynomial(std::move(c));
}

DivMod divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
    if (num.degree() < den.degree()) return {Polynomial{}, num};

    std::vector<double> rem = num.coeffs();
    const auto& d = den.coeffs();
    const std::size_t dn = d.size() - 1;
    std::vector<double> quo(rem.size() - dn, 0.0);
    for (std::size_t k = quo.size(); k-- > 0;) {
        const double q = rem[k + dn] / d[dn];
        quo[k] = q;
        for (std::size_t j = 0; j <= dn; ++j) rem[k + j] -= q * d[j];
        rem[k + dn] = 0.0;
    }
    rem.resize(dn);
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

namespace {

double max_abs(const Polynomial& p) {
    double m = 0.0;
    for (double c : p.coeffs()) m = std::max(m, std::abs(c));
    return m;
}

Polynomial normalized(const Polynomial& p) {
    const double m = max_abs(p);
    return m == 0.0 ? p : p * (1.0 / m);
}

// Drop the factor x^j for the largest j dividing p; those roots sit at 0.
Polynomial strip_zero_roots(const Polynomial& p) {
    const auto& c = p.coeffs();
    std::size_t j = 0;
    while (j < c.size() && c[j] == 0.0) ++j;
    return Polynomial(std::vector<double>(c.begin() + static_cast<std::ptrdiff_t>(j), c.end()));
}

int sign_at_zero_plus(const Polynomial& p) {
    for (double c : p.coeffs())
        if (c != 0.0) return c > 0 ? 1 : -1;
    return 0;
}

int sign_at_infinity(const Polynomial& p) {
    const double l = p.leading();
    return l > 0 ? 1 : (l < 0 ? -1 : 0);
}

int sign_variations(const std::vector<int>& signs) {
    int count = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

constexpr double kSturmNoise = 1e-10;

}  // namespace

int sturm_count_positive(const Polynomial& p_in) {
    if (p_in.is_zero()) throw std::invalid_argument("sturm_count_positive: zero polynomial");
    const Polynomial p = normalized(strip_zero_roots(p_in));
    if (p.degree() == 0) return 0;

    std::vector<Polynomial> chain{p, normalized(derivative(p))};
    while (chain.back().degree() > 0) {
        const Polynomial& a = chain[chain.size() - 2];
        const Polynomial& b = chain.back();
        auto [q, r] = divmod(a, b);
        const double noise = kSturmNoise * (max_abs(a) + max_abs(q) * max_abs(b));
        std::vector<double> rc = r.coeffs();
        for (double& c : rc)
            if (std::abs(c) <= noise) c = 0.0;
        Polynomial rem(std::move(rc));
        if (rem.is_zero()) {
            throw RootCertificationError("sturm_count_positive: repeated root suspected (gcd of degree " +
                                         std::to_string(b.degree()) + ")");
        }
        chain.push_back(normalized(-rem));
    }

    std::vector<int> at_zero, at_inf;
    for (const auto& s : chain) {
        at_zero.push_back(sign_at_zero_plus(s));
        at_inf.push_back(sign_at_infinity(s));
    }
    return sign_variations(at_zero) - sign_variations(at_inf);
}

namespace {

double bisect(const Polynomial& p, double lo, double hi, double flo, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = p(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

constexpr int kPointsPerDecade = 64;
constexpr int kFirstDecade = -8;
constexpr int kLastDecade = 8;

}  // namespace

std::vector<double> positive_roots(const Polynomial& p_in, double tol) {
    if (p_in.is_zero()) throw std::invalid_argument("positive_roots: zero polynomial");
    if (!(tol > 0)) throw std::invalid_argument("positive_roots: tol must be positive");

    const Polynomial p = strip_zero_roots(p_in);
    const int expected = sturm_count_positive(p);
    if (p.degree() == 0) return {};

    const int steps = (kLastDecade - kFirstDecade) * kPointsPerDecade;
    std::vector<double> xs(static_cast<std::size_t>(steps) + 1);
    std::vector<double> fs(xs.size());
    for (int i = 0; i <= steps; ++i) {
        xs[i] = std::pow(10.0, kFirstDecade + static_cast<double>(i) / kPointsPerDecade);
        fs[i] = p(xs[i]);
    }

    std::vector<double> roots;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (fs[i] == 0.0) {
            roots.push_back(xs[i]);
            continue;
        }
        if (i + 1 < xs.size() && fs[i + 1] != 0.0 && (fs[i] < 0) != (fs[i + 1] < 0))
            roots.push_back(bisect(p, xs[i], xs[i + 1], fs[i], tol));
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double r : roots)
        if (merged.empty() || r - merged.back() > tol) merged.push_back(r);

    if (static_cast<int>(merged.size()) != expected) {
        throw RootCertificationError("positive_roots: located " + std::to_string(merged.size()) +
                                     " root(s) but Sturm count is " + std::to_string(expected) +
                                     " for p = " + to_string(p_in));
    }
    return merged;
}

std::string to_string(const Polynomial& p) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (i) os << ", ";
        os << p.coeffs()[i];
    }
    os << ']';
    return os.str();
}

}  // namespace khab
