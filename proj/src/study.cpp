#include "nonlocal/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nonlocal/operators.hpp"
#include "nonlocal/solver.hpp"

namespace nonlocal {

namespace {

const double kNormLimitTarget = M_PI * M_PI / 2.0;  // integral |grad sin(pi x1) sin(pi x2)|^2

ScalarField manufactured_solution()
{
    return {[](Point2 p) { return p.x * p.x * p.y + p.y * p.y; }, nullptr, nullptr};
}

ScalarField manufactured_rhs()
{
    return {[](Point2 p) { return -2.0 * (p.y + 1.0); }, nullptr, nullptr};
}

ScalarField sine_product()
{
    return {[](Point2 p) { return std::sin(M_PI * p.x) * std::sin(M_PI * p.y); }, nullptr,
            nullptr};
}

int ceil_positive(double v)
{
    return static_cast<int>(std::ceil(v * (1.0 - 1e-12)));
}

int even_sides(double v)
{
    int n = std::max(3, ceil_positive(v));
    if (n % 2 != 0) ++n;
    return n;
}

Kernel config_kernel(const StudyConfig& cfg)
{
    return make_kernel(cfg.kernel, 2, cfg.s);
}

int sides_for_row(const StudyConfig& cfg, std::size_t k, double delta)
{
    if (cfg.path == StudyPath::BallBaseline) return 0;
    if (!cfg.n_list.empty()) {
        if (cfg.n_list.size() != cfg.delta_list.size())
            throw std::invalid_argument("run_study: n_list must match delta_list in length");
        return cfg.n_list[k];
    }
    switch (cfg.path) {
        case StudyPath::FixedN:
            return cfg.n_fixed;
        default:
            return even_sides(cfg.n_coeff * std::pow(delta, -cfg.n_exp));
    }
}

void check_config(const StudyConfig& cfg)
{
    if (cfg.delta_list.empty()) throw std::invalid_argument("run_study: empty delta_list");
    for (std::size_t i = 0; i < cfg.delta_list.size(); ++i) {
        if (!(cfg.delta_list[i] > 0.0))
            throw std::invalid_argument("run_study: horizons must be positive");
        if (i > 0 && !(cfg.delta_list[i] < cfg.delta_list[i - 1]))
            throw std::invalid_argument("run_study: delta_list must be strictly decreasing");
    }
    if (!(cfg.beta > 1.0)) throw std::invalid_argument("run_study: beta must exceed 1");
    if (cfg.path == StudyPath::GrowingN && !(cfg.n_exp > 0.0) && cfg.n_list.empty())
        throw std::invalid_argument("run_study: GrowingN needs n_exp > 0");
}

void check_size_guard(double delta, double h)
{
    double dof = std::pow(std::round(1.0 / h), 2.0);
    double radius = std::ceil(delta / h) + 1.0;
    if (dof > 4e6 || radius > 64.0) {
        std::ostringstream msg;
        msg << "run_study: refused, problem too large for a desk run (dof " << dof
            << " > 4e6 or stencil radius " << radius << " > 64 cells); increase delta or "
            << "lower beta";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

const char* study_path_name(StudyPath path)
{
    switch (path) {
        case StudyPath::BallBaseline: return "BallBaseline";
        case StudyPath::FixedN: return "FixedN";
        case StudyPath::GrowingN: return "GrowingN";
        case StudyPath::SigmaTable: return "SigmaTable";
        case StudyPath::NormLimit: return "NormLimit";
        case StudyPath::KGamma: return "KGamma";
    }
    return "unknown";
}

StudyPath study_path_from_name(const std::string& name)
{
    if (name == "BallBaseline") return StudyPath::BallBaseline;
    if (name == "FixedN") return StudyPath::FixedN;
    if (name == "GrowingN") return StudyPath::GrowingN;
    if (name == "SigmaTable") return StudyPath::SigmaTable;
    if (name == "NormLimit") return StudyPath::NormLimit;
    if (name == "KGamma") return StudyPath::KGamma;
    throw std::invalid_argument("unknown study path: " + name);
}

StudyReport run_study(const StudyConfig& cfg)
{
    check_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const Kernel kernel = config_kernel(cfg);
    const ScalarField u0 = manufactured_solution();
    const ScalarField f = manufactured_rhs();

    StudyReport report;
    report.config = cfg;

    for (std::size_t k = 0; k < cfg.delta_list.size(); ++k) {
        const double delta = cfg.delta_list[k];
        const int n = sides_for_row(cfg, k, delta);
        StudyRow row;
        row.k = static_cast<int>(k);
        row.delta = delta;
        row.n = n;

        switch (cfg.path) {
            case StudyPath::BallBaseline:
            case StudyPath::FixedN:
            case StudyPath::GrowingN: {
                const double h = 1.0 / ceil_positive(std::pow(delta, -cfg.beta));
                check_size_guard(delta, h);
                NeighborhoodSpec nb{n == 0 ? Strategy::Ball : Strategy::RegularNGon, delta, n,
                                    cfg.rotation};
                Grid grid = build_grid(h, delta);
                Stencil st = build_stencil(grid, kernel, nb, cfg.refine);
                Field u = solve(st, grid, f, cfg.cg_tol, &u0);
                row.h = h;
                row.dof = grid.free_count();
                row.l2_error = l2_error(u, u0);
                break;
            }
            case StudyPath::SigmaTable: {
                Polygon unit = regular_polygon({0.0, 0.0}, 1.0, n, cfg.rotation);
                SecondMoments m = polygon_second_moments(kernel, unit, {cfg.quad_order, true});
                row.l2_error = 1.0 - 0.5 * (m.m1 + m.m2);  // moment deficit, tends to zero
                break;
            }
            case StudyPath::NormLimit: {
                const double h = 1.0 / ceil_positive(std::pow(delta, -cfg.beta));
                check_size_guard(delta, h);
                NeighborhoodSpec nb{n == 0 ? Strategy::Ball : Strategy::RegularNGon, delta, n,
                                    cfg.rotation};
                Grid grid = build_grid(h, delta);
                Field u = sample_field(grid, sine_product());
                EnergyNorms en = energy_norms(u, kernel, nb, cfg.refine);
                row.h = h;
                row.dof = grid.free_count();
                row.l2_error = std::abs(en.polygon - kNormLimitTarget);
                break;
            }
            case StudyPath::KGamma: {
                NeighborhoodSpec nb{Strategy::RegularNGon, delta, n, cfg.rotation};
                row.l2_error = neighborhood_truncation_mass(kernel, nb);
                break;
            }
        }

        if (k > 0 && report.rows.back().l2_error > 0.0 && row.l2_error > 0.0) {
            row.rate = std::log2(report.rows.back().l2_error / row.l2_error);
            row.has_rate = true;
        }
        report.rows.push_back(row);
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

void write_csv(const StudyReport& report, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << "k,delta,n,h,dof,l2_error,rate\n";
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (const StudyRow& r : report.rows) {
        out << r.k << ',' << fmt(r.delta) << ',' << r.n << ',' << fmt(r.h) << ',' << r.dof << ','
            << fmt(r.l2_error) << ',';
        if (r.has_rate) out << fmt(r.rate);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

StudyConfig config_from_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    nlohmann::json j;
    in >> j;
    StudyConfig cfg;
    if (j.contains("path")) cfg.path = study_path_from_name(j.at("path").get<std::string>());
    if (j.contains("delta_list")) cfg.delta_list = j.at("delta_list").get<std::vector<double>>();
    if (j.contains("n_fixed")) cfg.n_fixed = j.at("n_fixed").get<int>();
    if (j.contains("n_coeff")) cfg.n_coeff = j.at("n_coeff").get<double>();
    if (j.contains("n_exp")) cfg.n_exp = j.at("n_exp").get<double>();
    if (j.contains("n_list")) cfg.n_list = j.at("n_list").get<std::vector<int>>();
    if (j.contains("beta")) cfg.beta = j.at("beta").get<double>();
    if (j.contains("kernel"))
        cfg.kernel = kernel_family_from_name(j.at("kernel").get<std::string>());
    if (j.contains("s")) cfg.s = j.at("s").get<double>();
    if (j.contains("quad_order")) cfg.quad_order = j.at("quad_order").get<int>();
    if (j.contains("cg_tol")) cfg.cg_tol = j.at("cg_tol").get<double>();
    if (j.contains("refine")) cfg.refine = j.at("refine").get<int>();
    if (j.contains("rotation")) cfg.rotation = j.at("rotation").get<double>();
    return cfg;
}

}  // namespace nonlocal
