#pragma once

#include <functional>
#include <vector>

namespace nonlocal {

// One-dimensional Gauss-Legendre rule on [0, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights computed once per order and cached; thread-safe after first use.
const GaussRule& gauss_legendre(int order);

// Adaptive Gauss bisection of smooth-ish integrands on [a, b].
// Splits panels until the order-10/order-20 discrepancy is below tol.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-14);

}  // namespace nonlocal
