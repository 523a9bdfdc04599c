#pragma once

#include <functional>

#include "nonlocal/geometry.hpp"
#include "nonlocal/kernels.hpp"

namespace nonlocal {

// Scalar function of position; the second derivatives are optional and only
// needed by taylor_residual.
struct ScalarField {
    std::function<double(Point2)> eval;
    std::function<double(Point2)> d11;
    std::function<double(Point2)> d22;
};

struct QuadratureSpec {
    int order = 16;                // Gauss-Legendre points per direction
    bool symmetric_pairing = true; // pair z with -z for centrally symmetric neighborhoods
};

// Per-coordinate second moments of a kernel over a polygon.
struct SecondMoments {
    double m1 = 0.0;
    double m2 = 0.0;
};

// integral_P xi_i^2 gamma(|xi|) d xi for a polygon P inside the closed unit
// disk, centered at the origin. Fan triangulation about the origin with
// per-triangle polar quadrature; the radial integral is evaluated in closed
// form, so the result is accurate for every singularity s < d + 2.
SecondMoments polygon_second_moments(const Kernel& k, const Polygon& p,
                                     const QuadratureSpec& q = {});

// Closed forms for the inscribed regular n-gon (2D):
// constant kernel:     sin(2pi/n)/(2pi/n) * (2 + cos(2pi/n))/3
// peridynamic kernel:  (n/pi) cos^3(pi/n) * integral_0^{pi/n} sec^3
double regular_ngon_moment_constant(int sides);
double regular_ngon_moment_peridynamic(int sides);

// Value of the polygon-truncated operator on |x|^2 for the constant kernel;
// equals 4 * regular_ngon_moment_constant and tends to the local value 4.
double regular_ngon_quadratic_value(int sides);

// Pointwise operator with the symmetrized neighborhood kernel,
//   2 * integral (u(y) - u(x)) gamma_nb(x, y) dy,
// over the ball or the polygon template. Kernels with s > d are rejected.
double apply_operator(const ScalarField& u, Point2 x, const Kernel& k,
                      const NeighborhoodSpec& nb, const QuadratureSpec& q = {});

// (4 / quadratic_value(n)) * apply_operator, the rescaling that restores the
// local limit for a fixed regular n-gon.
double rescaled_apply(const ScalarField& u, Point2 x, const Kernel& k,
                      const NeighborhoodSpec& nb, const QuadratureSpec& q = {});

// Symmetrized truncated kernel value
//   gamma_rescaled(|y-x|) * (1_T(y-x) + 1_T(x-y)) / 2
// for the translation-invariant template of `nb`. Exactly symmetric in (x, y).
double symmetrized_gamma(Point2 x, Point2 y, const Kernel& k, const NeighborhoodSpec& nb);

// | apply_operator(phi, x) - m1 d11 phi(x) - m2 d22 phi(x) |, the remainder of
// the second-order local expansion; decays as O(delta^2) for smooth phi.
double taylor_residual(const ScalarField& phi, Point2 x, const Kernel& k,
                       const NeighborhoodSpec& nb, const QuadratureSpec& q = {});

// Mass of the rescaled kernel over ball-minus-polygon,
//   integral_{B_delta \ P_delta} gamma_delta,
// the factor controlling how much of the kernel a polygonal neighborhood
// drops. Constant across x for translation-invariant templates, so
// sample_points is accepted for interface compatibility and not used.
double neighborhood_truncation_mass(const Kernel& k, const NeighborhoodSpec& nb,
                                    int sample_points = 1);

}  // namespace nonlocal
