#include "nonlocal/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nonlocal {

namespace {

// Legendre nodes on [-1, 1] by Newton iteration on P_n, then mapped to [0, 1].
GaussRule compute_rule(int order)
{
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    const int n = order;
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map to [0, 1]
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.weights[i] = 0.5 * w;
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order)
{
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

namespace {

double panel(const std::function<double(double)>& f, double a, double b, int order)
{
    const GaussRule& g = gauss_legendre(order);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        s += g.weights[i] * f(a + (b - a) * g.nodes[i]);
    return s * (b - a);
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             double coarse, int depth)
{
    double mid = 0.5 * (a + b);
    double left = panel(f, a, mid, 20);
    double right = panel(f, mid, b, 20);
    double fine = left + right;
    if (std::abs(fine - coarse) <= tol || depth >= 48) return fine;
    return adapt(f, a, mid, 0.5 * tol, left, depth + 1) +
           adapt(f, mid, b, 0.5 * tol, right, depth + 1);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol)
{
    if (!(b >= a)) throw std::invalid_argument("adaptive_integrate: b < a");
    if (a == b) return 0.0;
    return adapt(f, a, b, tol, panel(f, a, b, 20), 0);
}

}  // namespace nonlocal
