#include "nonlocal/kernels.hpp"

#include <cmath>

#include "nonlocal/quadrature.hpp"

namespace nonlocal {

namespace {

double unit_sphere_area(int dim)
{
    // w_d = 2 pi^{d/2} / Gamma(d/2); w_1 = 2, w_2 = 2 pi, w_3 = 4 pi
    return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
}

}  // namespace

Kernel make_kernel(KernelFamily family, int dim, double s)
{
    if (dim < 1) throw std::invalid_argument("make_kernel: dimension must be >= 1");
    Kernel k;
    k.family = family;
    k.dim = dim;
    k.sphere_area = unit_sphere_area(dim);
    const double d = dim;
    switch (family) {
        case KernelFamily::Constant:
            k.norm_const = d * (d + 2.0) / k.sphere_area;
            break;
        case KernelFamily::Linear:
            k.norm_const = d * (d + 2.0) * (d + 3.0) / k.sphere_area;
            break;
        case KernelFamily::GaussianLike: {
            double ce = adaptive_integrate(
                [d](double t) { return std::pow(t, d + 1.0) * std::exp(-t * t); }, 0.0, 1.0,
                1e-14);
            k.norm_const = d / (ce * k.sphere_area);
            break;
        }
        case KernelFamily::Singular:
            if (!(s < d + 2.0))
                throw std::invalid_argument("make_kernel: singular kernel needs s < d + 2");
            k.exponent = s;
            k.norm_const = d * (d + 2.0 - s) / k.sphere_area;
            break;
    }
    return k;
}

double gamma(const Kernel& k, double t)
{
    if (!(t >= 0.0)) throw std::invalid_argument("gamma: need t >= 0");
    if (t >= 1.0) return 0.0;
    switch (k.family) {
        case KernelFamily::Constant:
            return k.norm_const;
        case KernelFamily::Linear:
            return k.norm_const * (1.0 - t);
        case KernelFamily::GaussianLike:
            return k.norm_const * std::exp(-t * t);
        case KernelFamily::Singular:
            if (t == 0.0) throw std::domain_error("gamma: singular kernel evaluated at t = 0");
            return k.norm_const * std::pow(t, -k.exponent);
    }
    throw std::invalid_argument("gamma: unknown kernel family");
}

double gamma_rescaled(const Kernel& k, double delta, double r)
{
    if (!(delta > 0.0)) throw std::invalid_argument("gamma_rescaled: delta must be positive");
    if (!(r >= 0.0)) throw std::invalid_argument("gamma_rescaled: need r >= 0");
    return std::pow(delta, -(k.dim + 2.0)) * gamma(k, r / delta);
}

double second_moment(const Kernel& k, double radius_cut)
{
    if (!(radius_cut > 0.0 && radius_cut <= 1.0))
        throw std::invalid_argument("second_moment: radius_cut must be in (0, 1]");
    // radial reduction: integral xi_i^2 gamma = (w_d / d) * integral_0^cut r^{d+1} gamma(r) dr.
    // r = cut * t^2 grading keeps singular integrands smooth near the origin.
    const double cut = radius_cut;
    auto f = [&](double t) {
        double r = cut * t * t;
        double jac = 2.0 * cut * t;
        if (k.family == KernelFamily::Singular)
            return k.norm_const * std::pow(r, k.dim + 1.0 - k.exponent) * jac;
        return std::pow(r, k.dim + 1.0) * gamma(k, r) * jac;
    };
    double radial = adaptive_integrate(f, 0.0, 1.0, 1e-14);
    return k.sphere_area / k.dim * radial;
}

KernelFamily kernel_family_from_name(const std::string& name)
{
    if (name == "constant") return KernelFamily::Constant;
    if (name == "linear") return KernelFamily::Linear;
    if (name == "gaussian") return KernelFamily::GaussianLike;
    if (name == "singular") return KernelFamily::Singular;
    throw std::invalid_argument("unknown kernel family: " + name);
}

const char* kernel_family_name(KernelFamily family)
{
    switch (family) {
        case KernelFamily::Constant: return "constant";
        case KernelFamily::Linear: return "linear";
        case KernelFamily::GaussianLike: return "gaussian";
        case KernelFamily::Singular: return "singular";
    }
    return "unknown";
}

}  // namespace nonlocal
