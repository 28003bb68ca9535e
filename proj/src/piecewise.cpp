#include "khab/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace khab {

namespace {

std::string describe(const SmoothnessDefect& d) {
    std::ostringstream os;
    os.precision(12);
    os << "derivative of order " << d.order << " jumps at breakpoint #" << d.breakpoint_index << " (t = " << d.t
       << "): left " << d.left << ", right " << d.right;
    return os.str();
}

}  // namespace

SmoothnessError::SmoothnessError(const SmoothnessDefect& d) : std::runtime_error(describe(d)), defect_(d) {}

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Polynomial> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (pieces_.size() != breaks_.size() + 1)
        throw std::invalid_argument("piecewise: need exactly one more piece than breakpoints");
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        if (!(breaks_[i] > 0) || !std::isfinite(breaks_[i]))
            throw std::invalid_argument("piecewise: breakpoints must be positive and finite");
        if (i > 0 && !(breaks_[i] > breaks_[i - 1]))
            throw std::invalid_argument("piecewise: breakpoints must be strictly increasing");
    }
}

std::size_t PiecewisePolynomial::piece_index(double t) const {
    return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin());
}

std::optional<SmoothnessDefect> PiecewisePolynomial::smoothness_defect(int k, double rel_tol) const {
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        Polynomial left = pieces_[i];
        Polynomial right = pieces_[i + 1];
        const double t = breaks_[i];
        for (int order = 0; order <= k; ++order) {
            const double l = left(t);
            const double r = right(t);
            const double scale = std::max({1.0, std::abs(l), std::abs(r)});
            if (std::abs(l - r) > rel_tol * scale) return SmoothnessDefect{i, t, order, l, r};
            left = khab::derivative(left);
            right = khab::derivative(right);
        }
    }
    return std::nullopt;
}

void PiecewisePolynomial::require_smoothness(int k, double rel_tol) const {
    if (auto d = smoothness_defect(k, rel_tol)) throw SmoothnessError(*d);
}

int PiecewisePolynomial::smoothness_class(int max_order, double rel_tol) const {
    auto d = smoothness_defect(max_order, rel_tol);
    return d ? d->order - 1 : max_order;
}

PiecewisePolynomial& PiecewisePolynomial::operator*=(double s) {
    for (auto& p : pieces_) p *= s;
    return *this;
}

PiecewisePolynomial& PiecewisePolynomial::operator+=(const PiecewisePolynomial& rhs) {
    if (rhs.breaks_ != breaks_) throw std::invalid_argument("piecewise: adding over different breakpoints");
    for (std::size_t i = 0; i < pieces_.size(); ++i) pieces_[i] += rhs.pieces_[i];
    return *this;
}

PiecewisePolynomial derivative(const PiecewisePolynomial& g, int k) {
    std::vector<Polynomial> pieces;
    pieces.reserve(g.pieces().size());
    for (const auto& p : g.pieces()) pieces.push_back(derivative(p, k));
    return PiecewisePolynomial(g.breakpoints(), std::move(pieces));
}

PiecewisePolynomial operator*(double s, PiecewisePolynomial g) { return g *= s; }

PiecewisePolynomial operator+(PiecewisePolynomial a, const PiecewisePolynomial& b) { return a += b; }

}  // namespace khab
