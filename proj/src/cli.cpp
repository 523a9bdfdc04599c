#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nonlocal/operators.hpp"
#include "nonlocal/solver.hpp"
#include "nonlocal/study.hpp"

namespace nonlocal {

namespace {

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    if (out.empty()) throw CLI::ValidationError("--n-list", "expected a comma-separated list");
    return out;
}

ScalarField named_field(const std::string& name)
{
    if (name == "quadratic")
        return {[](Point2 p) { return p.x * p.x + p.y * p.y; }, [](Point2) { return 2.0; },
                [](Point2) { return 2.0; }};
    if (name == "affine")
        return {[](Point2 p) { return 3.0 * p.x - 2.0 * p.y + 1.0; }, [](Point2) { return 0.0; },
                [](Point2) { return 0.0; }};
    if (name == "trig")
        return {[](Point2 p) { return std::sin(p.x) * std::cos(p.y); },
                [](Point2 p) { return -std::sin(p.x) * std::cos(p.y); },
                [](Point2 p) { return -std::sin(p.x) * std::cos(p.y); }};
    throw CLI::ValidationError("--func", "expected quadratic, affine or trig");
}

Strategy named_strategy(const std::string& name)
{
    if (name == "ball") return Strategy::Ball;
    if (name == "regular") return Strategy::RegularNGon;
    if (name == "nocaps") return Strategy::Nocaps;
    throw CLI::ValidationError("--strategy", "expected ball, regular or nocaps");
}

void print_report(const StudyReport& rep)
{
    std::printf("path %s, kernel %s, beta %.17g, wall %.2fs\n",
                study_path_name(rep.config.path), kernel_family_name(rep.config.kernel),
                rep.config.beta, rep.wall_seconds);
    std::printf("%3s %12s %6s %12s %10s %16s %8s\n", "k", "delta", "n", "h", "dof", "value",
                "rate");
    for (const StudyRow& r : rep.rows) {
        std::printf("%3d %12.6g %6d %12.6g %10lld %16.8e ", r.k, r.delta, r.n, r.h,
                    static_cast<long long>(r.dof), r.l2_error);
        if (r.has_rate)
            std::printf("%8.3f\n", r.rate);
        else
            std::printf("%8s\n", "-");
    }
}

}  // namespace

int cli_main(const std::vector<std::string>& args)
{
    CLI::App app{"2D nonlocal diffusion with polygonally approximated interaction neighborhoods"};
    app.require_subcommand(1);

    std::string kernel_name = "constant";
    double s = 1.0;
    int quad_order = 16;

    auto add_kernel_flags = [&](CLI::App* sub) {
        sub->add_option("--kernel", kernel_name, "constant | linear | gaussian | singular");
        sub->add_option("--s", s, "singularity exponent for --kernel singular");
    };
    auto build_kernel = [&]() {
        return make_kernel(kernel_family_from_name(kernel_name), 2,
                           kernel_name == "singular" ? s : 0.0);
    };

    // sigma: second-moment table over side counts
    auto* sigma_cmd = app.add_subcommand("sigma", "per-axis second moments of regular n-gons");
    std::string n_list_text = "4,8,16,64";
    add_kernel_flags(sigma_cmd);
    sigma_cmd->add_option("--n-list", n_list_text, "comma-separated side counts");
    sigma_cmd->add_option("--quad-order", quad_order, "Gauss points per direction");
    sigma_cmd->callback([&]() {
        Kernel k = build_kernel();
        std::printf("%6s %18s %18s %12s\n", "n", "moment(quad)", "closed form", "|diff|");
        for (int n : parse_int_list(n_list_text)) {
            Polygon unit = regular_polygon({0.0, 0.0}, 1.0, n);
            SecondMoments m = polygon_second_moments(k, unit, {quad_order, true});
            double quad = 0.5 * (m.m1 + m.m2);
            bool have_closed = k.family == KernelFamily::Constant ||
                               (k.family == KernelFamily::Singular && k.exponent == 1.0);
            if (have_closed) {
                double closed = k.family == KernelFamily::Constant
                                    ? regular_ngon_moment_constant(n)
                                    : regular_ngon_moment_peridynamic(n);
                std::printf("%6d %18.12f %18.12f %12.3e\n", n, quad, closed,
                            std::abs(quad - closed));
            } else {
                std::printf("%6d %18.12f %18s %12s\n", n, quad, "-", "-");
            }
        }
    });

    // apply: pointwise operator value
    auto* apply_cmd = app.add_subcommand("apply", "pointwise operator applied to a test function");
    std::string func_name = "quadratic";
    std::string strategy_name = "ball";
    double delta = 0.1;
    int sides = 8;
    double rotation = 0.0;
    double px = 0.3, py = 0.4;
    bool rescaled = false;
    add_kernel_flags(apply_cmd);
    apply_cmd->add_option("--func", func_name, "quadratic | affine | trig")->required();
    apply_cmd->add_option("--delta", delta, "horizon")->required();
    apply_cmd->add_option("--strategy", strategy_name, "ball | regular");
    apply_cmd->add_option("--n", sides, "polygon side count (even)");
    apply_cmd->add_option("--rotation", rotation, "first-vertex angle");
    apply_cmd->add_option("--x", px, "evaluation point x");
    apply_cmd->add_option("--y", py, "evaluation point y");
    apply_cmd->add_option("--quad-order", quad_order, "Gauss points per direction");
    apply_cmd->add_flag("--rescaled", rescaled, "apply the 4/C_n rescaling (regular only)");
    apply_cmd->callback([&]() {
        Kernel k = build_kernel();
        NeighborhoodSpec nb{named_strategy(strategy_name), delta, sides, rotation};
        ScalarField u = named_field(func_name);
        double v = rescaled ? rescaled_apply(u, {px, py}, k, nb, {quad_order, true})
                            : apply_operator(u, {px, py}, k, nb, {quad_order, true});
        std::printf("%.9f\n", v);
    });

    // solve: one manufactured-solution solve
    auto* solve_cmd = app.add_subcommand("solve", "manufactured volume-constrained solve");
    double beta = 1.5;
    double cg_tol = 1e-10;
    int refine = 4;
    add_kernel_flags(solve_cmd);
    solve_cmd->add_option("--delta", delta, "horizon")->required();
    solve_cmd->add_option("--strategy", strategy_name, "ball | regular");
    solve_cmd->add_option("--n", sides, "polygon side count (even)");
    solve_cmd->add_option("--beta", beta, "mesh exponent, h = 1/ceil(delta^-beta)");
    solve_cmd->add_option("--cg-tol", cg_tol, "relative residual");
    solve_cmd->add_option("--refine", refine, "rim sub-sampling for kernel averages");
    solve_cmd->callback([&]() {
        StudyConfig cfg;
        cfg.path = named_strategy(strategy_name) == Strategy::Ball ? StudyPath::BallBaseline
                                                                   : StudyPath::FixedN;
        cfg.delta_list = {delta};
        cfg.n_fixed = sides;
        cfg.beta = beta;
        cfg.kernel = kernel_family_from_name(kernel_name);
        cfg.s = kernel_name == "singular" ? s : 0.0;
        cfg.cg_tol = cg_tol;
        cfg.refine = refine;
        print_report(run_study(cfg));
    });

    // study: full path from a JSON config
    auto* study_cmd = app.add_subcommand("study", "convergence path from a JSON config");
    std::string config_path, out_path;
    study_cmd->add_option("--config", config_path, "flat JSON config file")->required();
    study_cmd->add_option("--out", out_path, "output CSV path")->required();
    study_cmd->callback([&]() {
        StudyReport rep = run_study(config_from_json_file(config_path));
        print_report(rep);
        write_csv(rep, out_path);
        std::printf("wrote %s\n", out_path.c_str());
    });

    // norm-limit: energy norms against the local H1 seminorm
    auto* norm_cmd = app.add_subcommand("norm-limit", "energy norms of sin(pi x)sin(pi y)");
    double nl_beta = 2.0;
    add_kernel_flags(norm_cmd);
    norm_cmd->add_option("--delta", delta, "horizon");
    norm_cmd->add_option("--n", sides, "side count, 0 for the ball");
    norm_cmd->add_option("--beta", nl_beta, "mesh exponent, h = 1/ceil(delta^-beta)");
    norm_cmd->add_option("--refine", refine, "rim sub-sampling for kernel averages");
    norm_cmd->callback([&]() {
        Kernel k = build_kernel();
        double h = 1.0 / std::ceil(std::pow(delta, -nl_beta) * (1.0 - 1e-12));
        Grid grid = build_grid(h, delta);
        NeighborhoodSpec nb{sides == 0 ? Strategy::Ball : Strategy::RegularNGon, delta, sides,
                            0.0};
        Field u = sample_field(grid, {[](Point2 p) {
                                          return std::sin(M_PI * p.x) * std::sin(M_PI * p.y);
                                      },
                                      nullptr, nullptr});
        EnergyNorms en = energy_norms(u, k, nb, refine);
        double target = M_PI * M_PI / 2.0;
        std::printf("h = %.17g, dof = %lld\n", h, static_cast<long long>(grid.free_count()));
        std::printf("truncated-ball %.8f  polygon %.8f  full-ball %.8f  target %.8f\n",
                    en.truncated_ball, en.polygon, en.full_ball, target);
        std::printf("relative deviation (polygon): %+.3f%%\n",
                    100.0 * (en.polygon - target) / target);
    });

    // kgamma: kernel mass lost to the polygonal truncation
    auto* kg_cmd = app.add_subcommand("kgamma", "kernel mass over ball minus polygon");
    add_kernel_flags(kg_cmd);
    kg_cmd->add_option("--delta", delta, "horizon")->required();
    kg_cmd->add_option("--n", sides, "polygon side count")->required();
    kg_cmd->callback([&]() {
        Kernel k = build_kernel();
        NeighborhoodSpec nb{Strategy::RegularNGon, delta, sides, 0.0};
        double v = neighborhood_truncation_mass(k, nb);
        std::printf("K = %.6f\n", v);
        if (k.family == KernelFamily::Constant) {
            double closed = 4.0 / (delta * delta) *
                            (1.0 - sides / (2.0 * M_PI) * std::sin(2.0 * M_PI / sides));
            std::printf("closed form (constant kernel) = %.6f\n", closed);
        }
    });

    std::vector<const char*> argv;
    argv.push_back("nlpoly");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

}  // namespace nonlocal
