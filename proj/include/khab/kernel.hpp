#pragma once

#include "khab/quad.hpp"

namespace khab {

/// Order of the kernel A_n(x) = int_x^1 (1-y)^n dy/y.
struct KernelSpec {
    int n = 0;
};

/// Closed-form A_n(x) for 0 < x <= 1.
///
/// Uses -ln x - sum_{k=1..n} (1-x)^k/k below x = 1/2 and the positive
/// tail series sum_{k>n} (1-x)^k/k above, which stays accurate when A_n
/// is tiny near x = 1. Throws std::domain_error outside (0, 1].
double kernel_eval(KernelSpec spec, double x);

/// Same integral by adaptive quadrature; reference for kernel_eval.
QuadResult kernel_eval_quadrature(KernelSpec spec, double x, double tol);

}  // namespace khab
