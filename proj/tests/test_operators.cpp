#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "nonlocal/operators.hpp"

using namespace nonlocal;

namespace {

const ScalarField quadratic{[](Point2 p) { return p.x * p.x + p.y * p.y; },
                            [](Point2) { return 2.0; }, [](Point2) { return 2.0; }};
const ScalarField affine{[](Point2 p) { return 3.0 * p.x - 2.0 * p.y + 1.0; },
                         [](Point2) { return 0.0; }, [](Point2) { return 0.0; }};
const ScalarField trig{[](Point2 p) { return std::sin(p.x) * std::cos(p.y); },
                       [](Point2 p) { return -std::sin(p.x) * std::cos(p.y); },
                       [](Point2 p) { return -std::sin(p.x) * std::cos(p.y); }};

Polygon unit_ngon(int n, double rot = 0.0) { return regular_polygon({0, 0}, 1.0, n, rot); }

}  // namespace

TEST_CASE("closed-form moments")
{
    CHECK(regular_ngon_moment_constant(4) == doctest::Approx(4.0 / (3.0 * M_PI)).epsilon(1e-12));
    CHECK(regular_ngon_moment_constant(6) == doctest::Approx(0.68916111927724007).epsilon(1e-7));
    CHECK(std::abs(regular_ngon_moment_constant(1000000) - 1.0) < 1e-10);

    // peridynamic n = 4 via the antiderivative at pi/4: (4/pi) cos^3(pi/4) * (sqrt2 + ln(1+sqrt2))/2
    double expect4 = 4.0 / M_PI * std::pow(std::cos(M_PI / 4), 3.0) * 0.5 *
                     (std::sqrt(2.0) + std::log(1.0 + std::sqrt(2.0)));
    CHECK(regular_ngon_moment_peridynamic(4) == doctest::Approx(expect4).epsilon(1e-13));
    CHECK(regular_ngon_moment_peridynamic(4) == doctest::Approx(0.51668864143969310).epsilon(1e-8));
    CHECK(regular_ngon_moment_peridynamic(6) > regular_ngon_moment_peridynamic(4));
    CHECK(regular_ngon_moment_peridynamic(6) < 1.0);
    CHECK(std::abs(regular_ngon_moment_peridynamic(1000000) - 1.0) < 1e-9);

    CHECK_THROWS_AS(regular_ngon_moment_constant(2), std::invalid_argument);
    CHECK_THROWS_AS(regular_ngon_moment_peridynamic(2), std::invalid_argument);
}

TEST_CASE("quadratic value of the truncated operator")
{
    CHECK(regular_ngon_quadratic_value(4) ==
          doctest::Approx(16.0 / (3.0 * M_PI)).epsilon(1e-12));
    CHECK(std::abs(regular_ngon_quadratic_value(1000000) - 4.0) < 1e-9);
    for (int n : {4, 6, 8, 12, 16, 32, 64})
        CHECK(regular_ngon_quadratic_value(n) == 4.0 * regular_ngon_moment_constant(n));
    CHECK_THROWS_AS(regular_ngon_quadratic_value(2), std::invalid_argument);
}

TEST_CASE("moment monotonicity and limits")
{
    double prev_c = 0.0, prev_p = 0.0;
    for (int n : {4, 6, 8, 12, 16, 32, 64}) {
        double mc = regular_ngon_moment_constant(n);
        double mp = regular_ngon_moment_peridynamic(n);
        CHECK(mc > 0.0);
        CHECK(mc < 1.0);
        CHECK(mp > 0.0);
        CHECK(mp < 1.0);
        CHECK(mc > prev_c);
        CHECK(mp > prev_p);
        prev_c = mc;
        prev_p = mp;
    }
    CHECK(regular_ngon_moment_constant(64) > 0.995);
    CHECK(regular_ngon_moment_peridynamic(64) > 0.995);
}

TEST_CASE("polygon second moments match the closed forms")
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    Kernel peri = make_kernel(KernelFamily::Singular, 2, 1.0);
    for (int n : {4, 6, 8, 16, 64}) {
        SecondMoments mc = polygon_second_moments(constant, unit_ngon(n));
        SecondMoments mp = polygon_second_moments(peri, unit_ngon(n));
        CHECK(std::abs(mc.m1 - regular_ngon_moment_constant(n)) < 1e-8);
        CHECK(std::abs(mc.m2 - regular_ngon_moment_constant(n)) < 1e-8);
        CHECK(std::abs(mp.m1 - regular_ngon_moment_peridynamic(n)) < 1e-8);
        CHECK(std::abs(mp.m2 - regular_ngon_moment_peridynamic(n)) < 1e-8);
    }
}

TEST_CASE("polygon second moments: full-disk surrogate and strong singularities")
{
    Polygon big = unit_ngon(4096);
    for (KernelFamily fam : {KernelFamily::Constant, KernelFamily::Linear,
                             KernelFamily::GaussianLike}) {
        SecondMoments m = polygon_second_moments(make_kernel(fam, 2), big);
        CHECK(std::abs(m.m1 - 1.0) < 1e-5);
        CHECK(std::abs(m.m2 - 1.0) < 1e-5);
    }
    // fractional exponents stay integrable in the moment integrand up to s < 4
    for (double s : {1.0, 2.5, 3.5}) {
        SecondMoments m = polygon_second_moments(make_kernel(KernelFamily::Singular, 2, s), big);
        CHECK(std::abs(m.m1 - 1.0) < 1e-4);
    }
}

TEST_CASE("polygon second moments: input validation")
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    Polygon shifted = regular_polygon({0.5, 0.0}, 0.4, 6, 0.0);
    CHECK_THROWS_AS(polygon_second_moments(constant, shifted), std::invalid_argument);
    Polygon too_big = regular_polygon({0, 0}, 1.5, 6, 0.0);
    CHECK_THROWS_AS(polygon_second_moments(constant, too_big), std::invalid_argument);
    CHECK_THROWS_AS(polygon_second_moments(constant, unit_ngon(8), {1, true}),
                    std::invalid_argument);
}

TEST_CASE("apply_operator on the ball is the Laplacian of quadratics")
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    Point2 x{0.3, 0.4};
    for (double delta : {0.2, 0.1, 0.05}) {
        NeighborhoodSpec nb{Strategy::Ball, delta, 0, 0.0};
        CHECK(std::abs(apply_operator(quadratic, x, constant, nb) - 4.0) < 1e-8);
    }
    // singular (peridynamic) kernel too
    Kernel peri = make_kernel(KernelFamily::Singular, 2, 1.0);
    NeighborhoodSpec nb{Strategy::Ball, 0.1, 0, 0.0};
    CHECK(std::abs(apply_operator(quadratic, x, peri, nb) - 4.0) < 1e-8);
}

TEST_CASE("apply_operator on fixed regular polygons is delta-independent")
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    Point2 x{0.3, 0.4};
    double c8 = regular_ngon_quadratic_value(8);
    for (double delta : {0.1, 0.05}) {
        NeighborhoodSpec nb{Strategy::RegularNGon, delta, 8, 0.0};
        CHECK(std::abs(apply_operator(quadratic, x, constant, nb) - c8) < 1e-8);
    }
    // affine inputs are annihilated by the centrally symmetric neighborhood
    NeighborhoodSpec nb{Strategy::RegularNGon, 0.1, 8, 0.0};
    CHECK(std::abs(apply_operator(affine, x, constant, nb)) < 1e-10);
    NeighborhoodSpec ball{Strategy::Ball, 0.1, 0, 0.0};
    CHECK(std::abs(apply_operator(affine, x, constant, ball)) < 1e-10);
}

TEST_CASE("rescaled apply restores the local value")
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    Point2 x{0.3, 0.4};
    for (int n : {4, 8}) {
        NeighborhoodSpec nb{Strategy::RegularNGon, 0.1, n, 0.0};
        CHECK(std::abs(rescaled_apply(quadratic, x, constant, nb) - 4.0) < 1e-8);
        CHECK(std::abs(rescaled_apply(affine, x, constant, nb)) < 1e-10);
    }
    NeighborhoodSpec ball{Strategy::Ball, 0.1, 0, 0.0};
    CHECK_THROWS_AS(rescaled_apply(quadratic, x, constant, ball), std::invalid_argument);
}

TEST_CASE("apply_operator rejects unsupported inputs")
{
    Kernel strong = make_kernel(KernelFamily::Singular, 2, 2.5);
    NeighborhoodSpec nb{Strategy::Ball, 0.1, 0, 0.0};
    CHECK_THROWS_AS(apply_operator(quadratic, {0, 0}, strong, nb), UnsupportedKernelError);
    Kernel d3 = make_kernel(KernelFamily::Constant, 3);
    CHECK_THROWS_AS(apply_operator(quadratic, {0, 0}, d3, nb), std::invalid_argument);
    CHECK_THROWS_AS(polygon_second_moments(d3, unit_ngon(8)), std::invalid_argument);
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    CHECK_THROWS_AS(apply_operator(quadratic, {0, 0}, constant, nb, {1, true}),
                    std::invalid_argument);
    NeighborhoodSpec bad{Strategy::Ball, -0.1, 0, 0.0};
    CHECK_THROWS_AS(apply_operator(quadratic, {0, 0}, constant, bad), std::invalid_argument);
}

TEST_CASE("one-sided quadrature agrees with pairing on even polygons")
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    Point2 x{0.2, -0.1};
    NeighborhoodSpec nb{Strategy::RegularNGon, 0.1, 8, 0.4};
    double paired = apply_operator(trig, x, constant, nb, {20, true});
    double one_sided = apply_operator(trig, x, constant, nb, {20, false});
    CHECK(paired == doctest::Approx(one_sided).epsilon(1e-10));
}

TEST_CASE("symmetrized kernel")
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    NeighborhoodSpec nb{Strategy::RegularNGon, 0.25, 8, 0.0};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-0.3, 0.3);
    for (int i = 0; i < 200; ++i) {
        Point2 x{uni(rng), uni(rng)};
        Point2 y{uni(rng), uni(rng)};
        if (x.x == y.x && x.y == y.y) continue;
        double a = symmetrized_gamma(x, y, constant, nb);
        double b = symmetrized_gamma(y, x, constant, nb);
        CHECK(a == b);  // bitwise
        // even template: equals the one-sided truncation
        ConvexTemplate tpl = ConvexTemplate::from_spec(nb);
        double one_sided =
            tpl.contains(y - x) ? gamma_rescaled(constant, nb.horizon, norm(y - x)) : 0.0;
        CHECK(a == doctest::Approx(one_sided).epsilon(1e-15));
    }
    // far outside both polygons
    CHECK(symmetrized_gamma({0, 0}, {1, 1}, constant, nb) == 0.0);
}

TEST_CASE("taylor residual")
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    Point2 x{0.3, 0.4};
    NeighborhoodSpec oct1{Strategy::RegularNGon, 0.2, 8, 0.0};
    NeighborhoodSpec oct2{Strategy::RegularNGon, 0.1, 8, 0.0};

    CHECK(taylor_residual(quadratic, x, constant, oct1) < 1e-8);
    CHECK(taylor_residual(affine, x, constant, oct1) < 1e-10);
    NeighborhoodSpec ball{Strategy::Ball, 0.2, 0, 0.0};
    CHECK(taylor_residual(quadratic, x, constant, ball) < 1e-8);

    double r1 = taylor_residual(trig, x, constant, oct1);
    double r2 = taylor_residual(trig, x, constant, oct2);
    CHECK(r1 / r2 > 3.5);
    CHECK(r1 / r2 < 4.5);

    ScalarField no_deriv{[](Point2 p) { return p.x; }, nullptr, nullptr};
    CHECK_THROWS_AS(taylor_residual(no_deriv, x, constant, oct1), std::invalid_argument);
}

TEST_CASE("kernel mass of the dropped caps")
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    NeighborhoodSpec oct{Strategy::RegularNGon, 0.1, 8, 0.0};
    double k1 = neighborhood_truncation_mass(constant, oct);
    double closed = 4.0 / (0.1 * 0.1) * (1.0 - 8.0 / (2.0 * M_PI) * std::sin(2.0 * M_PI / 8.0));
    CHECK(k1 == doctest::Approx(closed).epsilon(1e-10));
    CHECK(k1 == doctest::Approx(39.87347390168473).epsilon(1e-6));

    NeighborhoodSpec oct_half{Strategy::RegularNGon, 0.05, 8, 0.0};
    double k2 = neighborhood_truncation_mass(constant, oct_half);
    CHECK(k2 / k1 == doctest::Approx(4.0).epsilon(1e-12));

    NeighborhoodSpec many{Strategy::RegularNGon, 0.1, 4096, 0.0};
    CHECK(neighborhood_truncation_mass(constant, many) < 2e-4);
    CHECK(neighborhood_truncation_mass(constant, many) > 0.0);

    NeighborhoodSpec ball{Strategy::Ball, 0.1, 0, 0.0};
    CHECK(neighborhood_truncation_mass(constant, ball) == 0.0);
    Kernel strong = make_kernel(KernelFamily::Singular, 2, 2.0);
    CHECK_THROWS_AS(neighborhood_truncation_mass(strong, oct), UnsupportedKernelError);

    // the singular s=1 kernel puts less mass in the caps than the constant one
    Kernel peri = make_kernel(KernelFamily::Singular, 2, 1.0);
    double kp = neighborhood_truncation_mass(peri, oct);
    CHECK(kp > 0.0);
    CHECK(kp < k1);
}
