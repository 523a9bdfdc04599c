#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

enum class KernelFamily { Constant, Linear, GaussianLike, Singular };

// Kernel with a different singularity than the operation supports.
struct UnsupportedKernelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Radial kernel gamma on the unit ball of R^d, normalized so that the
// per-coordinate second moment over the unit ball equals one:
//   integral_{|xi|<1} xi_i^2 gamma(|xi|) d xi = 1.
// Immutable after construction; evaluations are pure.
struct Kernel {
    KernelFamily family = KernelFamily::Constant;
    int dim = 2;              // spatial dimension d >= 1
    double exponent = 0.0;    // singularity exponent s (Singular only)
    double norm_const = 0.0;  // normalization coefficient
    double sphere_area = 0.0; // surface area of the unit sphere in R^d
};

// Constructs a catalogue kernel; `s` is only consulted for Singular and must
// satisfy s < d + 2 (finite second moment).
Kernel make_kernel(KernelFamily family, int dim, double s = 0.0);

// gamma(t); zero for t >= 1. Singular kernels reject t == 0.
double gamma(const Kernel& k, double t);

// delta^-(d+2) * gamma(r/delta); zero for r >= delta. The scaling keeps the
// second-moment normalization independent of delta.
double gamma_rescaled(const Kernel& k, double delta, double r);

// integral_{|xi|<radius_cut} xi_i^2 gamma(|xi|) d xi, radius_cut in (0, 1].
// Equals one at radius_cut = 1 up to quadrature error.
double second_moment(const Kernel& k, double radius_cut);

// parsing helper for CLI/config ("constant" | "linear" | "gaussian" | "singular")
KernelFamily kernel_family_from_name(const std::string& name);
const char* kernel_family_name(KernelFamily family);

}  // namespace nonlocal
