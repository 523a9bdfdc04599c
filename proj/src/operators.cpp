#include "nonlocal/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "nonlocal/quadrature.hpp"

namespace nonlocal {

namespace {

// integral_0^R t^p gamma(t) dt in closed form, p in {1, 3}; valid for R <= 1.
double radial_primitive(const Kernel& k, int p, double R)
{
    const double c = k.norm_const;
    switch (k.family) {
        case KernelFamily::Constant:
            return p == 1 ? c * R * R / 2.0 : c * std::pow(R, 4.0) / 4.0;
        case KernelFamily::Linear:
            return p == 1 ? c * (R * R / 2.0 - R * R * R / 3.0)
                          : c * (std::pow(R, 4.0) / 4.0 - std::pow(R, 5.0) / 5.0);
        case KernelFamily::GaussianLike:
            return p == 1 ? c * 0.5 * (1.0 - std::exp(-R * R))
                          : c * 0.5 * (1.0 - std::exp(-R * R) * (1.0 + R * R));
        case KernelFamily::Singular: {
            double e = p + 1.0 - k.exponent;
            if (!(e > 0.0)) throw UnsupportedKernelError("radial primitive diverges for this s");
            return c * std::pow(R, e) / e;
        }
    }
    throw std::invalid_argument("radial_primitive: unknown kernel family");
}

void require_unit_disk_polygon(const Polygon& p)
{
    if (norm(p.center) > 1e-12)
        throw std::invalid_argument("polygon_second_moments: polygon must be centered at the origin");
    for (const Point2& v : p.vertices)
        if (norm(v) > 1.0 + 1e-12)
            throw std::invalid_argument("polygon_second_moments: polygon leaves the unit disk");
}

void require_planar(const Kernel& k, const char* where)
{
    if (k.dim != 2)
        throw std::invalid_argument(std::string(where) + ": two-dimensional kernels only");
}

void check_quad(const QuadratureSpec& q)
{
    if (q.order < 2) throw std::invalid_argument("quadrature order must be >= 2");
}

double sec3_integral(double a)
{
    // integral_0^a sec^3 = (sec a tan a + log(sec a + tan a)) / 2
    double s = 1.0 / std::cos(a);
    double t = std::tan(a);
    return 0.5 * (s * t + std::log(s + t));
}

}  // namespace

SecondMoments polygon_second_moments(const Kernel& k, const Polygon& p, const QuadratureSpec& q)
{
    require_planar(k, "polygon_second_moments");
    require_unit_disk_polygon(p);
    check_quad(q);
    const GaussRule& g = gauss_legendre(q.order);
    SecondMoments m;
    const std::size_t n = p.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point2 a = p.vertices[i];
        Point2 b = p.vertices[(i + 1) % n];
        if (!(cross(a, b) > 0.0))
            throw std::invalid_argument("polygon_second_moments: polygon not star-shaped about origin");
        double t0 = std::atan2(a.y, a.x);
        double t1 = std::atan2(b.y, b.x);
        if (t1 <= t0) t1 += 2.0 * M_PI;
        // chord line of this fan triangle: R(theta) = dist / cos(theta - phi)
        Point2 e = b - a;
        double len = norm(e);
        Point2 nrm{e.y / len, -e.x / len};
        double dist = std::abs(dot(nrm, a));
        double phi = std::atan2(nrm.y, nrm.x);  // direction of the outward normal
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
            double th = t0 + (t1 - t0) * g.nodes[j];
            double R = std::min(dist / std::cos(th - phi), 1.0);
            double radial = radial_primitive(k, 3, R);
            double w = g.weights[j] * (t1 - t0);
            double cth = std::cos(th), sth = std::sin(th);
            m.m1 += w * cth * cth * radial;
            m.m2 += w * sth * sth * radial;
        }
    }
    return m;
}

double regular_ngon_moment_constant(int sides)
{
    if (sides < 3) throw std::invalid_argument("regular_ngon_moment_constant: need n >= 3");
    double a = 2.0 * M_PI / sides;
    return std::sin(a) / a * (2.0 + std::cos(a)) / 3.0;
}

double regular_ngon_moment_peridynamic(int sides)
{
    if (sides < 3) throw std::invalid_argument("regular_ngon_moment_peridynamic: need n >= 3");
    double a = M_PI / sides;
    double c = std::cos(a);
    return sides / M_PI * c * c * c * sec3_integral(a);
}

double regular_ngon_quadratic_value(int sides)
{
    return 4.0 * regular_ngon_moment_constant(sides);
}

namespace {

// paired difference u(x+z) + u(x-z) - 2 u(x); kills odd terms and the
// kernel singularity up to r^{2-s}
double paired_diff(const ScalarField& u, Point2 x, Point2 z, double ux)
{
    return u.eval(x + z) + u.eval(x - z) - 2.0 * ux;
}

void check_apply_kernel(const Kernel& k)
{
    require_planar(k, "apply_operator");
    if (k.family == KernelFamily::Singular && k.exponent > k.dim)
        throw UnsupportedKernelError(
            "apply_operator: kernels with s > d need a principal-value treatment");
}

// L u(x) over the disk neighborhood by a polar tensor rule.
double apply_ball(const ScalarField& u, Point2 x, const Kernel& k, double delta,
                  const QuadratureSpec& q)
{
    const GaussRule& g = gauss_legendre(q.order);
    const double ux = u.eval(x);
    const double scale = std::pow(delta, -(k.dim + 2.0));
    double total = 0.0;
    if (q.symmetric_pairing) {
        // L u(x) = 2 * integral over the half disk of the paired difference
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            double th = M_PI * g.nodes[i];
            Point2 dir{std::cos(th), std::sin(th)};
            double inner = 0.0;
            for (std::size_t j = 0; j < g.nodes.size(); ++j) {
                double t = g.nodes[j];
                double r = delta * t * t;      // graded toward the singular point
                double jac = delta * 2.0 * t;  // dr
                if (r == 0.0) continue;
                inner += g.weights[j] * paired_diff(u, x, r * dir, ux) * gamma(k, r / delta) *
                         r * jac;
            }
            total += g.weights[i] * M_PI * inner;
        }
        return 2.0 * scale * total;
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        double th = 2.0 * M_PI * g.nodes[i];
        Point2 dir{std::cos(th), std::sin(th)};
        double inner = 0.0;
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
            double t = g.nodes[j];
            double r = delta * t * t;
            double jac = delta * 2.0 * t;
            if (r == 0.0) continue;
            inner += g.weights[j] * (u.eval(x + r * dir) - ux) * gamma(k, r / delta) * r * jac;
        }
        total += g.weights[i] * 2.0 * M_PI * inner;
    }
    return 2.0 * scale * total;
}

// L u(x) over a polygon template (vertices around the origin, physical scale).
// Fan triangulation with a Duffy-type map; radial grading t^2 regularizes the
// r^{-s} factor for s <= d.
double apply_polygon(const ScalarField& u, Point2 x, const Kernel& k,
                     const std::vector<Point2>& verts, double delta, const QuadratureSpec& q)
{
    const GaussRule& g = gauss_legendre(q.order);
    const double ux = u.eval(x);
    const double scale = std::pow(delta, -(k.dim + 2.0));
    double total = 0.0;
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point2 a = verts[i];
        Point2 b = verts[(i + 1) % n];
        double two_area = cross(a, b);
        if (!(two_area > 0.0))
            throw std::invalid_argument("apply_operator: template not star-shaped about origin");
        for (std::size_t jb = 0; jb < g.nodes.size(); ++jb) {
            Point2 edge = a + g.nodes[jb] * (b - a);
            double wb = g.weights[jb];
            double inner = 0.0;
            for (std::size_t jt = 0; jt < g.nodes.size(); ++jt) {
                double t = g.nodes[jt];
                double s = t * t;  // position along the ray, graded
                Point2 z = s * edge;
                double r = norm(z);
                if (r == 0.0) continue;
                double diff = q.symmetric_pairing ? paired_diff(u, x, z, ux)
                                                  : 2.0 * (u.eval(x + z) - ux);
                inner += g.weights[jt] * diff * gamma(k, r / delta) * s * 2.0 * t;
            }
            total += wb * two_area * inner;
        }
    }
    return scale * total;
}

}  // namespace

double apply_operator(const ScalarField& u, Point2 x, const Kernel& k,
                      const NeighborhoodSpec& nb, const QuadratureSpec& q)
{
    check_quad(q);
    check_apply_kernel(k);
    if (!(nb.horizon > 0.0)) throw std::invalid_argument("apply_operator: horizon must be positive");
    if (nb.strategy == Strategy::Ball) return apply_ball(u, x, k, nb.horizon, q);
    Polygon tpl;
    if (nb.strategy == Strategy::RegularNGon)
        tpl = regular_polygon({0.0, 0.0}, nb.horizon, nb.sides, nb.rotation);
    else
        throw std::invalid_argument("apply_operator: nocaps needs an explicit per-point polygon");
    return apply_polygon(u, x, k, tpl.vertices, nb.horizon, q);
}

double rescaled_apply(const ScalarField& u, Point2 x, const Kernel& k,
                      const NeighborhoodSpec& nb, const QuadratureSpec& q)
{
    if (nb.strategy != Strategy::RegularNGon)
        throw std::invalid_argument("rescaled_apply: defined for the regular n-gon strategy");
    return 4.0 / regular_ngon_quadratic_value(nb.sides) * apply_operator(u, x, k, nb, q);
}

double symmetrized_gamma(Point2 x, Point2 y, const Kernel& k, const NeighborhoodSpec& nb)
{
    ConvexTemplate tpl = ConvexTemplate::from_spec(nb);
    Point2 z = y - x;
    double ind = (tpl.contains(z) ? 0.5 : 0.0) + (tpl.contains({-z.x, -z.y}) ? 0.5 : 0.0);
    if (ind == 0.0) return 0.0;
    return gamma_rescaled(k, nb.horizon, norm(z)) * ind;
}

double taylor_residual(const ScalarField& phi, Point2 x, const Kernel& k,
                       const NeighborhoodSpec& nb, const QuadratureSpec& q)
{
    if (!phi.d11 || !phi.d22)
        throw std::invalid_argument("taylor_residual: field needs analytic d11 and d22");
    double m1, m2;
    if (nb.strategy == Strategy::Ball) {
        m1 = m2 = second_moment(k, 1.0);
    } else if (nb.strategy == Strategy::RegularNGon) {
        Polygon unit = regular_polygon({0.0, 0.0}, 1.0, nb.sides, nb.rotation);
        SecondMoments m = polygon_second_moments(k, unit, q);
        m1 = m.m1;
        m2 = m.m2;
    } else {
        throw std::invalid_argument("taylor_residual: nocaps needs an explicit per-point polygon");
    }
    double lhs = apply_operator(phi, x, k, nb, q);
    return std::abs(lhs - m1 * phi.d11(x) - m2 * phi.d22(x));
}

double neighborhood_truncation_mass(const Kernel& k, const NeighborhoodSpec& nb,
                                    int sample_points)
{
    if (sample_points < 1)
        throw std::invalid_argument("neighborhood_truncation_mass: sample_points must be >= 1");
    if (nb.strategy == Strategy::Ball) return 0.0;
    if (nb.strategy != Strategy::RegularNGon)
        throw std::invalid_argument("neighborhood_truncation_mass: nocaps needs explicit polygons");
    require_planar(k, "neighborhood_truncation_mass");
    if (k.family == KernelFamily::Singular && !(k.exponent < k.dim))
        throw UnsupportedKernelError("neighborhood_truncation_mass: kernel mass diverges for s >= d");

    // work on the unit scale and divide by delta^2 at the end
    Polygon unit = regular_polygon({0.0, 0.0}, 1.0, nb.sides, nb.rotation);
    double ball_mass = 2.0 * M_PI * radial_primitive(k, 1, 1.0);
    const GaussRule& g = gauss_legendre(32);
    double poly_mass = 0.0;
    const std::size_t n = unit.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point2 a = unit.vertices[i];
        Point2 b = unit.vertices[(i + 1) % n];
        double t0 = std::atan2(a.y, a.x);
        double t1 = std::atan2(b.y, b.x);
        if (t1 <= t0) t1 += 2.0 * M_PI;
        Point2 e = b - a;
        double len = norm(e);
        Point2 nrm{e.y / len, -e.x / len};
        double dist = std::abs(dot(nrm, a));
        double phi = std::atan2(nrm.y, nrm.x);
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
            double th = t0 + (t1 - t0) * g.nodes[j];
            double R = std::min(dist / std::cos(th - phi), 1.0);
            poly_mass += g.weights[j] * (t1 - t0) * radial_primitive(k, 1, R);
        }
    }
    return (ball_mass - poly_mass) / (nb.horizon * nb.horizon);
}

}  // namespace nonlocal
