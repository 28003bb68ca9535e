#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "khab/conversion.hpp"
#include "khab/counterexample.hpp"
#include "khab/report_json.hpp"

using khab::PiecewisePolynomial;
using khab::Polynomial;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// inverse conversion of t^m for order n, from the Beta integral
// int_0^1 A_{n-1}(x) x^(m-1) dx = (m-1)! (n-1)! / (m (m+n-1)!)
double monomial_image(int m, int n) { return m * factorial(m + n - 1) / (factorial(m - 1) * factorial(n - 1)); }

PiecewisePolynomial random_smooth_spline(std::mt19937& rng, int n) {
    // g = a(t) on (0, b), a(t) + c (t - b)^(n+2) after: C^(n+1) at b
    std::uniform_real_distribution<double> u(-1.0, 1.0), where(0.3, 2.0);
    std::vector<double> c(6, 0.0);
    for (std::size_t k = 1; k < c.size(); ++k) c[k] = u(rng);
    const Polynomial left(c);
    const double b = where(rng);
    Polynomial bump{1.0};
    for (int k = 0; k < n + 2; ++k) bump *= Polynomial{-b, 1.0};
    return PiecewisePolynomial({b}, {left, left + u(rng) * bump});
}

}  // namespace

TEST(Piecewise, BreakpointBelongsToRightPiece) {
    const PiecewisePolynomial g({1.0, 2.0}, {Polynomial{1.0}, Polynomial{2.0}, Polynomial{3.0}});
    EXPECT_EQ(g(0.5), 1.0);
    EXPECT_EQ(g(1.0), 2.0);
    EXPECT_EQ(g(2.0), 3.0);
    EXPECT_EQ(g(1e9), 3.0);
}

TEST(Piecewise, RejectsMalformedLayout) {
    EXPECT_THROW(PiecewisePolynomial({1.0}, {Polynomial{1.0}}), std::invalid_argument);
    EXPECT_THROW(PiecewisePolynomial({0.0}, {Polynomial{1.0}, Polynomial{1.0}}), std::invalid_argument);
    EXPECT_THROW(PiecewisePolynomial({2.0, 1.0}, {Polynomial{}, Polynomial{}, Polynomial{}}), std::invalid_argument);
}

TEST(Piecewise, SmoothnessClass) {
    // t^2 glued to t^2 + (t-1)^3: C^2 but not C^3
    const Polynomial t2 = Polynomial::monomial(2);
    const Polynomial cube = Polynomial{-1.0, 1.0} * Polynomial{-1.0, 1.0} * Polynomial{-1.0, 1.0};
    const PiecewisePolynomial g({1.0}, {t2, t2 + cube});
    EXPECT_EQ(g.smoothness_class(6), 2);
    EXPECT_EQ(PiecewisePolynomial({1.0}, {t2, t2 + Polynomial{0.5}}).smoothness_class(3), -1);
    EXPECT_EQ(PiecewisePolynomial(t2).smoothness_class(5), 5);
}

TEST(DirectConvert, LinearQGivesSquare) {
    auto q = [](double y) { return 12 * y; };
    for (double t : {0.01, 0.5, 1.0, 2.0, 10.0})
        EXPECT_NEAR(khab::direct_convert(q, 2, t, 1e-12 * std::max(1.0, t * t)).value, t * t, 1e-11 * std::max(1.0, t * t)) << t;
}

TEST(DirectConvert, ZeroQ) {
    EXPECT_EQ(khab::direct_convert([](double) { return 0.0; }, 3, 1.7, 1e-10).value, 0.0);
}

TEST(DirectConvert, RejectsBadArguments) {
    auto q = [](double y) { return y; };
    EXPECT_THROW(khab::direct_convert(q, 0, 1.0, 1e-10), std::invalid_argument);
    EXPECT_THROW(khab::direct_convert(q, 2, 0.0, 1e-10), std::domain_error);
    EXPECT_THROW(khab::direct_convert(q, 2, 1.0, -1.0), std::invalid_argument);
}

TEST(DirectConvert, CounterexampleInsideModifiedRegion) {
    const auto spec = khab::make_counterexample(1.0);
    const auto q = khab::build_q(spec);
    const double t = spec.t0 / 2;
    const double h = std::pow(t - spec.t0, 4) / std::pow(spec.t0, 4);
    EXPECT_NEAR(khab::direct_convert(q, 2, t, 1e-12).value, t * t * (1 - h), 1e-10);
}

// A smooth black-box q: q(y) = e^{-y} with n = 1 has
// g(t) = int_0^t ln(t/y) e^{-y} dy = ln t + E_1(t) + gamma.
TEST(DirectConvert, BlackBoxExponential) {
    const double t = 2.0;
    const double e1_of_2 = 0.04890051070806112;  // E_1(2)
    const double expected = std::log(t) + e1_of_2 + 0.5772156649015329;
    EXPECT_NEAR(khab::direct_convert([](double y) { return std::exp(-y); }, 1, t, 1e-12).value, expected, 1e-11);
}

TEST(InverseConvert, Examples) {
    const auto q = khab::inverse_convert(PiecewisePolynomial(Polynomial::monomial(2)), 2);
    EXPECT_EQ(q.pieces().size(), 1u);
    EXPECT_EQ(q.pieces()[0], (Polynomial{0.0, 12.0}));
    EXPECT_TRUE(khab::inverse_convert(PiecewisePolynomial{}, 3).pieces()[0].is_zero());
}

TEST(InverseConvert, MonomialOracle) {
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 6; ++m) {
            const auto q = khab::inverse_convert(PiecewisePolynomial(Polynomial::monomial(m)), n);
            const Polynomial expected = Polynomial::monomial(m - 1, monomial_image(m, n));
            ASSERT_EQ(q.pieces()[0].degree(), m - 1);
            EXPECT_NEAR(q.pieces()[0][m - 1], expected[m - 1], 1e-9 * expected[m - 1]) << "n=" << n << " m=" << m;
        }
}

TEST(InverseConvert, ReportsBreakpointAndOrder) {
    const Polynomial t2 = Polynomial::monomial(2);
    const Polynomial cube = Polynomial{-1.5, 1.0} * Polynomial{-1.5, 1.0} * Polynomial{-1.5, 1.0};
    const PiecewisePolynomial g({0.5, 1.5}, {t2, t2, t2 + cube});
    try {
        khab::inverse_convert(g, 2);
        FAIL() << "expected SmoothnessError";
    } catch (const khab::SmoothnessError& e) {
        EXPECT_EQ(e.defect().breakpoint_index, 1u);
        EXPECT_EQ(e.defect().t, 1.5);
        EXPECT_EQ(e.defect().order, 3);
    }
    // order n+1 = 2 suffices for n = 1
    EXPECT_NO_THROW(khab::inverse_convert(g, 1));
}

TEST(InverseConvert, Linearity) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> c1(7), c2(7);
        for (double& v : c1) v = u(rng);
        for (double& v : c2) v = u(rng);
        const double a = u(rng), b = u(rng);
        const int n = 1 + trial % 4;
        const PiecewisePolynomial g1{Polynomial(c1)}, g2{Polynomial(c2)};
        const auto lhs = khab::inverse_convert(a * g1 + b * g2, n);
        const auto rhs = a * khab::inverse_convert(g1, n) + b * khab::inverse_convert(g2, n);
        for (double t : {0.1, 0.7, 1.3, 3.0}) EXPECT_NEAR(lhs(t), rhs(t), 1e-9 * std::max(1.0, std::abs(rhs(t))));
    }
}

TEST(RoundTrip, LinearQ) {
    const PiecewisePolynomial q(Polynomial{0.0, 12.0});
    const PiecewisePolynomial g(Polynomial::monomial(2));
    const double grid[] = {0.5, 1.0, 2.0};
    const auto r = khab::roundtrip_check(q, g, 2, grid, 1e-8);
    EXPECT_TRUE(r.ok);
    EXPECT_LE(r.max_deviation, 1e-8);
    EXPECT_EQ(r.points.size(), 3u);
}

TEST(RoundTrip, EmptyGridPasses) {
    const auto r = khab::roundtrip_check(PiecewisePolynomial{}, PiecewisePolynomial{}, 2, {}, 1e-8);
    EXPECT_TRUE(r.ok);
    EXPECT_TRUE(r.points.empty());
}

TEST(RoundTrip, CounterexampleSpline) {
    const auto spec = khab::make_counterexample(1.0);
    std::vector<double> grid;
    for (int i = 1; i <= 50; ++i) grid.push_back(2.0 * spec.t0 * i / 50);
    const auto r = khab::roundtrip_check(khab::build_q(spec), khab::build_g(spec), 2, grid, 1e-7);
    EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_LE(r.max_deviation, 1e-7);
}

TEST(RoundTrip, DetectsWrongTarget) {
    const PiecewisePolynomial q(Polynomial{0.0, 12.0});
    const PiecewisePolynomial wrong(Polynomial{0.0, 0.0, 1.001});
    const double grid[] = {1.0};
    const auto r = khab::roundtrip_check(q, wrong, 2, grid, 1e-8);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.failures.size(), 1u);
    EXPECT_EQ(r.worst_t, 1.0);
}

// inverse then direct reproduces random C^(n+1) splines vanishing at 0
TEST(RoundTrip, RandomSplines) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 3;
        const auto g = random_smooth_spline(rng, n);
        const auto q = khab::inverse_convert(g, n);
        const double grid[] = {0.05, 0.4, g.breakpoints()[0], 1.1, 2.5};
        const auto r = khab::roundtrip_check(q, g, n, grid, 1e-8);
        EXPECT_TRUE(r.ok) << "trial " << trial << ": " << (r.failures.empty() ? "" : r.failures.front());
    }
}

TEST(PiecewiseJson, RoundTripIsExact) {
    const auto g = khab::build_g(khab::make_counterexample(0.37));
    const khab::json j = g;
    const auto back = khab::json::parse(j.dump()).get<PiecewisePolynomial>();
    ASSERT_EQ(back.breakpoints(), g.breakpoints());
    ASSERT_EQ(back.pieces().size(), g.pieces().size());
    for (std::size_t i = 0; i < g.pieces().size(); ++i) EXPECT_EQ(back.pieces()[i], g.pieces()[i]);
}
