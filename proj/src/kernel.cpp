#include "khab/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace khab {

namespace {

void check_domain(KernelSpec spec, double x) {
    if (spec.n < 0) throw std::invalid_argument("kernel: order must be >= 0");
    if (!(x > 0.0) || x > 1.0) throw std::domain_error("kernel: x = " + std::to_string(x) + " outside (0, 1]");
}

}  // namespace

double kernel_eval(KernelSpec spec, double x) {
    check_domain(spec, x);
    if (x == 1.0) return 0.0;
    const double s = 1.0 - x;

    if (x < 0.5) {
        double sum = -std::log(x);
        double pw = 1.0;
        for (int k = 1; k <= spec.n; ++k) {
            pw *= s;
            sum -= pw / k;
        }
        return sum;
    }

    // s <= 1/2: terms shrink at least geometrically by half
    double pw = std::pow(s, spec.n + 1);
    double sum = 0.0;
    for (int k = spec.n + 1;; ++k) {
        const double term = pw / k;
        sum += term;
        if (term <= 1e-18 * sum) break;
        pw *= s;
    }
    return sum;
}

QuadResult kernel_eval_quadrature(KernelSpec spec, double x, double tol) {
    check_domain(spec, x);
    if (!(tol > 0)) throw std::invalid_argument("kernel_eval_quadrature: tol must be positive");
    if (x == 1.0) return {0.0, 0.0, 1};
    const int n = spec.n;
    QuadOptions opts;
    opts.abs_tol = tol;
    return integrate([n](double y) { return std::pow(1.0 - y, n) / y; }, x, 1.0, opts);
}

}  // namespace khab
