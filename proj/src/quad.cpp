#include "khab/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace khab {

namespace {

// Kronrod abscissae (descending, center last) and weights; the Gauss
// 10-point rule lives on the odd-indexed abscissae.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208977255538, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a;
    double b;
    double value;
    double err;
};

Panel gauss_kronrod21(const Integrand& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();

    const double half = 0.5 * (b - a);
    const double center = a + half;
    const double fc = f(center);

    double resg = 0.0;
    double resk = kWgk[10] * fc;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{}, f2{};
    for (std::size_t j = 0; j < 10; ++j) {
        // measured from the nearer endpoint so no node rounds onto a or b
        const double off = half * (1.0 - kXgk[j]);
        f1[j] = f(a + off);
        f2[j] = f(b - off);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - reskh);
    for (std::size_t j = 0; j < 10; ++j)
        resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

    const double dhalf = std::abs(half);
    resabs *= dhalf;
    resasc *= dhalf;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk * half, err};
}

std::vector<double> initial_breaks(double a, double b, Singular s) {
    constexpr int kLevels = 6;
    constexpr double kRatio = 0.125;
    const bool left = s == Singular::left || s == Singular::both;
    const bool right = s == Singular::right || s == Singular::both;
    const double reach = (left && right) ? 0.5 * (b - a) : (b - a);

    std::vector<double> pts{a, b};
    if (left && right) pts.push_back(a + reach);
    double step = reach;
    for (int k = 0; k < kLevels; ++k) {
        step *= kRatio;
        if (left) pts.push_back(a + step);
        if (right) pts.push_back(b - step);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

QuadResult summarize(const std::vector<Panel>& panels) {
    std::vector<const Panel*> order;
    order.reserve(panels.size());
    for (const auto& p : panels) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const Panel* x, const Panel* y) { return x->a < y->a; });
    QuadResult r{0.0, 0.0, static_cast<int>(panels.size())};
    for (const Panel* p : order) {
        r.value += p->value;
        r.abs_error_estimate += p->err;
    }
    return r;
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integrate: need finite a < b");
    if (!(opts.abs_tol > 0) && !(opts.rel_tol > 0))
        throw std::invalid_argument("integrate: need a positive tolerance");
    if (opts.max_subdivisions < 1) throw std::invalid_argument("integrate: subdivision budget must be >= 1");

    std::vector<Panel> panels;
    const auto breaks = initial_breaks(a, b, opts.singular);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) panels.push_back(gauss_kronrod21(f, breaks[i], breaks[i + 1]));

    auto by_error = [&panels](std::size_t x, std::size_t y) { return panels[x].err < panels[y].err; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> worst(by_error);
    for (std::size_t i = 0; i < panels.size(); ++i) worst.push(i);

    auto target = [&opts](double value) { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };

    double value = 0.0, err = 0.0;
    for (const auto& p : panels) {
        value += p.value;
        err += p.err;
    }

    for (;;) {
        if (err <= target(value)) {
            // running sums drift; confirm on a fresh ordered sum
            const QuadResult exact = summarize(panels);
            if (exact.abs_error_estimate <= target(exact.value)) return exact;
            value = exact.value;
            err = exact.abs_error_estimate;
        }
        if (static_cast<int>(panels.size()) >= opts.max_subdivisions) {
            throw QuadratureError("integrate: subdivision budget of " + std::to_string(opts.max_subdivisions) +
                                      " panels exhausted",
                                  summarize(panels));
        }

        const std::size_t i = worst.top();
        const Panel p = panels[i];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {
            throw QuadratureError("integrate: panel near " + std::to_string(p.a) + " cannot be refined further",
                                  summarize(panels));
        }
        worst.pop();
        const Panel lo = gauss_kronrod21(f, p.a, mid);
        const Panel hi = gauss_kronrod21(f, mid, p.b);
        value += lo.value + hi.value - p.value;
        err += lo.err + hi.err - p.err;
        panels[i] = lo;
        panels.push_back(hi);
        worst.push(i);
        worst.push(panels.size() - 1);
    }
}

QuadResult integrate(const Integrand& f, double a, double b, double tol) {
    QuadOptions opts;
    opts.abs_tol = tol;
    opts.singular = Singular::both;
    return integrate(f, a, b, opts);
}

QuadResult integrate_halfline(const Integrand& f, double a, const QuadOptions& opts) {
    if (!std::isfinite(a)) throw std::invalid_argument("integrate_halfline: a must be finite");
    // [a, T] directly, then t = T/s on (0, 1]. A tail decaying like
    // t^(-1-delta) becomes s^(delta-1), singular at s = 0 where doubles
    // resolve it, unlike the u -> 1 end of t = a + u/(1-u).
    const double T = a + std::max(1.0, std::abs(a));
    QuadOptions head = opts, tail = opts;
    head.abs_tol = tail.abs_tol = 0.5 * opts.abs_tol;
    const bool left = opts.singular == Singular::left || opts.singular == Singular::both;
    head.singular = left ? Singular::left : Singular::none;
    tail.singular = Singular::left;
    auto mapped = [&f, T](double s) { return s > 0.0 ? f(T / s) * T / (s * s) : 0.0; };
    return integrate(f, a, T, head) + integrate(mapped, 0.0, 1.0, tail);
}

QuadResult integrate_halfline(const Integrand& f, double a, double tol) {
    QuadOptions opts;
    opts.abs_tol = tol;
    opts.singular = Singular::both;
    return integrate_halfline(f, a, opts);
}

}  // namespace khab
