// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nonlocal/operators.hpp"
#include "nonlocal/solver.hpp"
#include "nonlocal/study.hpp"

using namespace nonlocal;

namespace {

int g_failures = 0;

void criterion(const std::string& name, const std::function<bool(std::string&)>& body)
{
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %-28s (%6.2fs)  %s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

const ScalarField kQuadratic{[](Point2 p) { return p.x * p.x + p.y * p.y; },
                             [](Point2) { return 2.0; }, [](Point2) { return 2.0; }};
const ScalarField kTrig{[](Point2 p) { return std::sin(p.x) * std::cos(p.y); },
                        [](Point2 p) { return -std::sin(p.x) * std::cos(p.y); },
                        [](Point2 p) { return -std::sin(p.x) * std::cos(p.y); }};
const ScalarField kManufactured{[](Point2 p) { return p.x * p.x * p.y + p.y * p.y; }, nullptr,
                                nullptr};
const ScalarField kForcing{[](Point2 p) { return -2.0 * (p.y + 1.0); }, nullptr, nullptr};

char buf[256];

bool sigma_closed_forms(std::string& detail)
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    Kernel peri = make_kernel(KernelFamily::Singular, 2, 1.0);
    double worst = 0.0;
    for (int n : {4, 6, 8, 16, 64}) {
        Polygon unit = regular_polygon({0, 0}, 1.0, n, 0.0);
        SecondMoments mc = polygon_second_moments(constant, unit);
        SecondMoments mp = polygon_second_moments(peri, unit);
        worst = std::max(worst, std::abs(mc.m1 - regular_ngon_moment_constant(n)));
        worst = std::max(worst, std::abs(mc.m2 - regular_ngon_moment_constant(n)));
        worst = std::max(worst, std::abs(mp.m1 - regular_ngon_moment_peridynamic(n)));
        worst = std::max(worst, std::abs(mp.m2 - regular_ngon_moment_peridynamic(n)));
    }
    if (worst > 1e-8) {
        detail = "quadrature vs closed form drift " + std::to_string(worst);
        return false;
    }
    double sigma4 = regular_ngon_moment_constant(4);
    if (std::abs(sigma4 - 4.0 / (3.0 * M_PI)) > 1e-12) {
        detail = "sigma(4) formula drift";
        return false;
    }
    // Monte Carlo oracle: second moment of the constant kernel over the square
    std::mt19937_64 rng(20260809);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const long samples = 10000000;
    double acc = 0.0;
    for (long i = 0; i < samples; ++i) {
        double x = uni(rng), y = uni(rng);
        if (std::abs(x) + std::abs(y) <= 1.0) acc += x * x;
    }
    double mc_sigma = 4.0 / M_PI * (4.0 * acc / double(samples));
    if (std::abs(mc_sigma - sigma4) > 1e-3) {
        detail = "Monte Carlo oracle disagrees: " + std::to_string(mc_sigma);
        return false;
    }
    std::snprintf(buf, sizeof buf, "max |quad-closed| = %.2e, MC sigma(4) = %.6f", worst,
                  mc_sigma);
    detail = buf;
    return true;
}

bool kernel_normalization(std::string& detail)
{
    double worst = 0.0;
    for (int d : {1, 2, 3})
        for (KernelFamily fam : {KernelFamily::Constant, KernelFamily::Linear,
                                 KernelFamily::GaussianLike, KernelFamily::Singular}) {
            Kernel k = make_kernel(fam, d, fam == KernelFamily::Singular ? 1.0 : 0.0);
            worst = std::max(worst, std::abs(second_moment(k, 1.0) - 1.0));
        }
    std::snprintf(buf, sizeof buf, "max |second moment - 1| = %.2e", worst);
    detail = buf;
    return worst <= 1e-10;
}

bool operator_consistency(std::string& detail)
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    Point2 x{0.3, 0.4};
    const double c8 = regular_ngon_quadratic_value(8);
    for (double delta : {0.2, 0.1, 0.05}) {
        NeighborhoodSpec ball{Strategy::Ball, delta, 0, 0.0};
        if (std::abs(apply_operator(kQuadratic, x, constant, ball) - 4.0) > 1e-8) {
            detail = "ball value drifted at delta " + std::to_string(delta);
            return false;
        }
        NeighborhoodSpec oct{Strategy::RegularNGon, delta, 8, 0.0};
        if (std::abs(apply_operator(kQuadratic, x, constant, oct) - c8) > 1e-8) {
            detail = "octagon value drifted at delta " + std::to_string(delta);
            return false;
        }
        if (std::abs(rescaled_apply(kQuadratic, x, constant, oct) - 4.0) > 1e-8) {
            detail = "rescaled value drifted at delta " + std::to_string(delta);
            return false;
        }
    }
    // delta-independent gap, frozen from the closed form 4 - 4*sigma_8
    const double gap = 4.0 - c8;
    if (std::abs(gap - 0.75033012709094203) > 1e-6) {
        detail = "gap drifted: " + std::to_string(gap);
        return false;
    }
    std::snprintf(buf, sizeof buf, "C_8 = %.10f, gap 4 - C_8 = %.10f (delta-independent)", c8,
                  gap);
    detail = buf;
    return true;
}

bool taylor_residual_decay(std::string& detail)
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    Point2 x{0.3, 0.4};
    double r1 = taylor_residual(kTrig, x, constant, {Strategy::RegularNGon, 0.2, 8, 0.0});
    double r2 = taylor_residual(kTrig, x, constant, {Strategy::RegularNGon, 0.1, 8, 0.0});
    double ratio = r1 / r2;
    std::snprintf(buf, sizeof buf, "residual(0.2)/residual(0.1) = %.3f", ratio);
    detail = buf;
    return ratio >= 3.5 && ratio <= 4.5;
}

bool norm_sandwich(std::string& detail)
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    const double delta = 1.0 / 8.0;
    Grid grid = build_grid(1.0 / 64.0, delta);
    NeighborhoodSpec oct{Strategy::RegularNGon, delta, 8, 0.0};
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        Field u;
        u.grid = grid;
        u.values.resize(std::size_t(grid.free_count()));
        for (double& v : u.values) v = uni(rng);
        EnergyNorms en = energy_norms(u, constant, oct);
        if (!(en.truncated_ball <= en.polygon && en.polygon <= en.full_ball)) {
            std::snprintf(buf, sizeof buf, "violated at trial %d: %.17g %.17g %.17g", trial,
                          en.truncated_ball, en.polygon, en.full_ball);
            detail = buf;
            return false;
        }
    }
    detail = "truncated <= polygon <= ball for 10 random fields on the 64^2 grid";
    return true;
}

bool norm_limit(std::string& detail)
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    const double delta = 1.0 / 16.0;
    const double target = M_PI * M_PI / 2.0;
    Grid grid = build_grid(1.0 / 256.0, delta);
    ScalarField sine{[](Point2 p) { return std::sin(M_PI * p.x) * std::sin(M_PI * p.y); },
                     nullptr, nullptr};
    Field u = sample_field(grid, sine);
    EnergyNorms ball = energy_norms(u, constant, {Strategy::Ball, delta, 0, 0.0});
    EnergyNorms poly = energy_norms(u, constant, {Strategy::RegularNGon, delta, 64, 0.0});
    double dev_ball = std::abs(ball.full_ball - target) / target;
    double dev_poly = std::abs(poly.polygon - target) / target;
    std::snprintf(buf, sizeof buf, "ball %.6f (%.2f%%), 64-gon %.6f (%.2f%%), target %.6f",
                  ball.full_ball, 100.0 * dev_ball, poly.polygon, 100.0 * dev_poly, target);
    detail = buf;
    return dev_ball <= 0.05 && dev_poly <= 0.05;
}

bool convergence_diagram(std::string& detail)
{
    const double cg_tol = 1e-10;
    auto path_errors = [&](StudyPath path, const std::vector<int>& n_list) {
        StudyConfig cfg;
        cfg.path = path;
        cfg.delta_list = {1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0};
        cfg.n_fixed = 8;
        cfg.n_list = n_list;
        cfg.beta = 1.5;
        cfg.kernel = KernelFamily::Constant;
        cfg.cg_tol = cg_tol;
        StudyReport rep = run_study(cfg);
        std::vector<double> errs;
        for (const StudyRow& r : rep.rows) errs.push_back(r.l2_error);
        return errs;
    };

    std::vector<double> ball = path_errors(StudyPath::BallBaseline, {});
    if (!(ball[1] < ball[0] && ball[2] < ball[1])) {
        detail = "ball baseline not strictly decreasing";
        return false;
    }
    std::vector<double> fixed = path_errors(StudyPath::FixedN, {});
    double plateau = fixed[2] / fixed[1];
    if (!(plateau >= 0.8 && plateau <= 1.2)) {
        detail = "fixed-n plateau ratio " + std::to_string(plateau);
        return false;
    }
    if (!(fixed[2] > 100.0 * cg_tol)) {
        detail = "fixed-n error fell to solver noise";
        return false;
    }
    // n(delta) = 2 * ceil(delta^-1/2 / 2) * 2, rounded up to even by construction
    std::vector<int> grow_n;
    for (double d : {1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0})
        grow_n.push_back(
            2 * static_cast<int>(std::ceil(std::sqrt(1.0 / d) / 2.0 * (1.0 - 1e-12))) * 2);
    std::vector<double> grow = path_errors(StudyPath::GrowingN, grow_n);
    if (!(grow[1] < grow[0] && grow[2] < grow[1])) {
        detail = "growing-n errors not strictly decreasing";
        return false;
    }
    if (!(grow[2] < 0.5 * grow[0])) {
        detail = "growing-n final error too large: " + std::to_string(grow[2] / grow[0]);
        return false;
    }
    std::snprintf(buf, sizeof buf,
                  "ball %.2e/%.2e/%.2e; fixed plateau %.3f; growing n={%d,%d,%d} e3/e1 = %.3f",
                  ball[0], ball[1], ball[2], plateau, grow_n[0], grow_n[1], grow_n[2],
                  grow[2] / grow[0]);
    detail = buf;
    return true;
}

bool kernel_mass_diagnostic(std::string& detail)
{
    Kernel constant = make_kernel(KernelFamily::Constant, 2);
    double k1 = neighborhood_truncation_mass(constant, {Strategy::RegularNGon, 0.1, 8, 0.0});
    double k2 = neighborhood_truncation_mass(constant, {Strategy::RegularNGon, 0.05, 8, 0.0});
    std::snprintf(buf, sizeof buf, "K(0.1) = %.4f, K(0.05)/K(0.1) = %.4f", k1, k2 / k1);
    detail = buf;
    if (std::abs(k1 - 39.874) > 0.1) return false;
    return std::abs(k2 / k1 - 4.0) <= 0.02 * 4.0;
}

}  // namespace

int main()
{
    std::printf("acceptance suite\n----------------\n");
    criterion("sigma-closed-forms", sigma_closed_forms);
    criterion("kernel-normalization", kernel_normalization);
    criterion("operator-loss-of-AC", operator_consistency);
    criterion("taylor-residual-decay", taylor_residual_decay);
    criterion("norm-sandwich", norm_sandwich);
    criterion("norm-limit", norm_limit);
    criterion("convergence-diagram", convergence_diagram);
    criterion("kgamma-diagnostic", kernel_mass_diagnostic);
    if (g_failures > 0) {
        std::printf("----------------\n%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("----------------\nall criteria passed\n");
    return 0;
}
