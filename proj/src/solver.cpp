#include "nonlocal/solver.hpp"

#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nonlocal {

namespace {

int ceil_cells(double ratio)
{
    int l = static_cast<int>(std::ceil(ratio * (1.0 - 1e-12)));
    while (l < ratio * (1.0 - 1e-12)) ++l;
    return l;
}

}  // namespace

Grid build_grid(double h, double delta)
{
    if (!(h > 0.0)) throw std::invalid_argument("build_grid: h must be positive");
    if (!(h < delta))
        throw std::invalid_argument("build_grid: neighborhood under-resolved, need h < delta");
    double cells_f = 1.0 / h;
    int cells = static_cast<int>(std::lround(cells_f));
    if (cells < 1 || std::abs(cells * h - 1.0) > 1e-9)
        throw std::invalid_argument("build_grid: h must tile the unit square (h = 1/m)");
    Grid g;
    g.h = h;
    g.cells = cells;
    g.layer = ceil_cells(delta / h);
    return g;
}

namespace {

struct TemplateWeights {
    // effective kernel mass per offset: weight w(D) = 2 h^4 * mass(D)
    std::vector<double> mass;
};

// mass(D) = avg over the offset cell of gamma_delta * 1_template. Interior
// cells use the midpoint kernel value; rim cells (|signed distance| < sqrt(2) h)
// use the exact overlap fraction times the kernel averaged over the covered
// sub-points. Offsets are enumerated row-major over [-radius, radius]^2.
TemplateWeights template_masses(const ConvexTemplate& tpl, const Kernel& k, double delta,
                                double h, int radius, int refine)
{
    const double scale = std::pow(delta, -(k.dim + 2.0));
    const double rim_band = std::sqrt(2.0) * h;
    const int side = 2 * radius + 1;
    TemplateWeights tw;
    tw.mass.assign(std::size_t(side) * side, 0.0);
    for (int di = -radius; di <= radius; ++di) {
        for (int dj = -radius; dj <= radius; ++dj) {
            if (di == 0 && dj == 0) continue;
            Point2 z{di * h, dj * h};
            double d_in = tpl.inside_distance(z);
            double m = 0.0;
            if (d_in >= rim_band) {
                m = scale * gamma(k, norm(z) / delta);
            } else if (d_in > -rim_band) {
                double area = tpl.box_overlap(z.x - 0.5 * h, z.x + 0.5 * h, z.y - 0.5 * h,
                                              z.y + 0.5 * h, nullptr);
                if (area > 0.0) {
                    double frac = std::min(area / (h * h), 1.0);
                    double sum = 0.0;
                    int cnt = 0;
                    for (int a = 0; a < refine; ++a) {
                        for (int b = 0; b < refine; ++b) {
                            Point2 p{z.x + ((a + 0.5) / refine - 0.5) * h,
                                     z.y + ((b + 0.5) / refine - 0.5) * h};
                            if (tpl.contains(p)) {
                                sum += gamma(k, norm(p) / delta);
                                ++cnt;
                            }
                        }
                    }
                    double gbar;
                    if (cnt > 0) {
                        gbar = sum / cnt;
                    } else {
                        // sliver: evaluate at the cell point closest to the origin
                        double nx = std::max({z.x - 0.5 * h, 0.0, -(z.x + 0.5 * h)});
                        double ny = std::max({z.y - 0.5 * h, 0.0, -(z.y + 0.5 * h)});
                        gbar = gamma(k, std::hypot(nx, ny) / delta);
                    }
                    m = scale * frac * gbar;
                }
            }
            std::size_t idx = std::size_t(di + radius) * side + (dj + radius);
            tw.mass[idx] = m;
        }
    }
    return tw;
}

// Exact masses of centrally symmetric templates satisfy m(D) = m(-D), but the
// overlap evaluations at mirrored cells round differently; copy one
// representative so the stencil is even to the last bit. `average` instead
// symmetrizes a genuinely asymmetric (odd-polygon) template.
void mirror_masses(TemplateWeights& tw, int radius, bool average)
{
    const int side = 2 * radius + 1;
    for (int a = 0; a < side; ++a)
        for (int b = 0; b < side; ++b) {
            std::size_t idx = std::size_t(a) * side + b;
            std::size_t mir = std::size_t(side - 1 - a) * side + (side - 1 - b);
            if (idx >= mir) continue;
            if (average) {
                double m = 0.5 * (tw.mass[idx] + tw.mass[mir]);
                tw.mass[idx] = m;
                tw.mass[mir] = m;
            } else {
                tw.mass[mir] = tw.mass[idx];
            }
        }
}

void check_solver_kernel(const Kernel& k)
{
    if (k.dim != 2) throw std::invalid_argument("grid operators are two-dimensional (d = 2)");
    if (k.family == KernelFamily::Singular && !(k.exponent < k.dim))
        throw UnsupportedKernelError("cell-pair integrals need s < d");
}

ConvexTemplate solver_template(const NeighborhoodSpec& nb)
{
    if (nb.strategy == Strategy::RegularNGon && nb.sides % 2 != 0)
        throw std::invalid_argument(
            "build_stencil: odd regular polygons are unsupported (symmetrized kernel would "
            "differ from the template truncation)");
    if (nb.strategy == Strategy::Nocaps)
        throw std::invalid_argument("build_stencil: nocaps is not translation-invariant");
    return ConvexTemplate::from_spec(nb);
}

}  // namespace

Stencil build_stencil(const Grid& grid, const Kernel& k, const NeighborhoodSpec& nb, int refine)
{
    check_solver_kernel(k);
    if (refine < 1) throw std::invalid_argument("build_stencil: refine must be >= 1");
    ConvexTemplate tpl = solver_template(nb);
    const double h = grid.h;
    const int radius = ceil_cells(nb.horizon / h) + 1;
    TemplateWeights tw = template_masses(tpl, k, nb.horizon, h, radius, refine);
    mirror_masses(tw, radius, false);
    Stencil st;
    st.radius = radius;
    st.h = h;
    const int side = 2 * radius + 1;
    const double h4 = h * h * h * h;
    for (int di = -radius; di <= radius; ++di) {
        for (int dj = -radius; dj <= radius; ++dj) {
            double m = tw.mass[std::size_t(di + radius) * side + (dj + radius)];
            if (m > 0.0) {
                st.entries.push_back({di, dj, 2.0 * m * h4});
                st.weight_sum += 2.0 * m * h4;
                if (std::max(std::abs(di), std::abs(dj)) > grid.layer)
                    throw std::invalid_argument("build_stencil: stencil exceeds the grid layer");
            }
        }
    }
    return st;
}

namespace {

// (A u)_i / divisor over the free cells; rows are independent, so the
// parallel path is bitwise identical to the serial one.
void apply_rows(const Stencil& st, const Grid& g, const std::vector<double>& u,
                std::vector<double>& out, double divisor, Exec mode)
{
    const int cells = g.cells;
    const int layer = g.layer;
    auto row = [&](int fi) {
        int i = layer + fi / cells;
        int j = layer + fi % cells;
        double acc = st.weight_sum * u[std::size_t(fi)];
        for (const StencilEntry& e : st.entries) {
            int ni = i + e.di;
            int nj = j + e.dj;
            if (g.is_free(ni, nj)) acc -= e.w * u[std::size_t(g.free_index(ni, nj))];
        }
        out[std::size_t(fi)] = acc / divisor;
    };
    const std::int64_t n = g.free_count();
    if (mode == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t fi = 0; fi < n; ++fi) row(static_cast<int>(fi));
    } else {
        for (std::int64_t fi = 0; fi < n; ++fi) row(static_cast<int>(fi));
    }
}

double dot_vec(const std::vector<double>& a, const std::vector<double>& b, Exec mode)
{
    double s = 0.0;
    const std::int64_t n = static_cast<std::int64_t>(a.size());
    if (mode == Exec::Parallel) {
#pragma omp parallel for schedule(static) reduction(+ : s)
        for (std::int64_t i = 0; i < n; ++i) s += a[std::size_t(i)] * b[std::size_t(i)];
    } else {
        for (std::int64_t i = 0; i < n; ++i) s += a[std::size_t(i)] * b[std::size_t(i)];
    }
    return s;
}

}  // namespace

Field assemble_apply(const Stencil& stencil, const Field& u, Exec mode)
{
    Field out;
    out.grid = u.grid;
    out.values.assign(u.values.size(), 0.0);
    if (u.values.size() != std::size_t(u.grid.free_count()))
        throw std::invalid_argument("assemble_apply: field size does not match grid");
    apply_rows(stencil, u.grid, u.values, out.values, 1.0, mode);
    return out;
}

Field solve(const Stencil& stencil, const Grid& grid, const ScalarField& f, double tol,
            const ScalarField* constraint, Exec mode)
{
    if (!(tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");
    const std::int64_t n = grid.free_count();
    const double inv_h2 = 1.0 / (grid.h * grid.h);

    std::vector<double> b(std::size_t(n), 0.0);
    for (std::int64_t fi = 0; fi < n; ++fi) {
        int i = grid.layer + static_cast<int>(fi) / grid.cells;
        int j = grid.layer + static_cast<int>(fi) % grid.cells;
        double v = f.eval(grid.center(i, j));
        if (constraint) {
            // lift the inhomogeneous volume constraint into the right-hand side
            double lift = 0.0;
            for (const StencilEntry& e : stencil.entries) {
                int ni = i + e.di;
                int nj = j + e.dj;
                if (!grid.is_free(ni, nj)) lift += e.w * constraint->eval(grid.center(ni, nj));
            }
            v += lift * inv_h2;
        }
        b[std::size_t(fi)] = v;
    }

    Field x;
    x.grid = grid;
    x.values.assign(std::size_t(n), 0.0);

    double b_norm = std::sqrt(dot_vec(b, b, mode));
    if (b_norm == 0.0) return x;

    std::vector<double> r = b;
    std::vector<double> p = b;
    std::vector<double> Ap(std::size_t(n), 0.0);
    double rs = dot_vec(r, r, mode);
    const std::int64_t max_iter = static_cast<std::int64_t>(10.0 * std::sqrt(double(n))) + 1;
    std::int64_t it = 0;
    while (std::sqrt(rs) > tol * b_norm) {
        if (it >= max_iter)
            throw NoConvergenceError("solve: conjugate gradient stalled", std::sqrt(rs) / b_norm,
                                     it);
        apply_rows(stencil, grid, p, Ap, grid.h * grid.h, mode);
        double alpha = rs / dot_vec(p, Ap, mode);
        const std::int64_t m = n;
        if (mode == Exec::Parallel) {
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < m; ++i) {
                x.values[std::size_t(i)] += alpha * p[std::size_t(i)];
                r[std::size_t(i)] -= alpha * Ap[std::size_t(i)];
            }
        } else {
            for (std::int64_t i = 0; i < m; ++i) {
                x.values[std::size_t(i)] += alpha * p[std::size_t(i)];
                r[std::size_t(i)] -= alpha * Ap[std::size_t(i)];
            }
        }
        double rs_new = dot_vec(r, r, mode);
        double beta = rs_new / rs;
        if (mode == Exec::Parallel) {
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < m; ++i)
                p[std::size_t(i)] = r[std::size_t(i)] + beta * p[std::size_t(i)];
        } else {
            for (std::int64_t i = 0; i < m; ++i)
                p[std::size_t(i)] = r[std::size_t(i)] + beta * p[std::size_t(i)];
        }
        rs = rs_new;
        ++it;
    }
    return x;
}

double l2_error(const Field& u, const ScalarField& exact)
{
    const Grid& g = u.grid;
    double s = 0.0;
    for (std::int64_t fi = 0; fi < g.free_count(); ++fi) {
        int i = g.layer + static_cast<int>(fi) / g.cells;
        int j = g.layer + static_cast<int>(fi) % g.cells;
        double d = u.values[std::size_t(fi)] - exact.eval(g.center(i, j));
        s += g.h * g.h * d * d;
    }
    return std::sqrt(s);
}

Field sample_field(const Grid& grid, const ScalarField& f)
{
    Field out;
    out.grid = grid;
    out.values.resize(std::size_t(grid.free_count()));
    for (std::int64_t fi = 0; fi < grid.free_count(); ++fi) {
        int i = grid.layer + static_cast<int>(fi) / grid.cells;
        int j = grid.layer + static_cast<int>(fi) % grid.cells;
        out.values[std::size_t(fi)] = f.eval(grid.center(i, j));
    }
    return out;
}

EnergyNorms energy_norms(const Field& u, const Kernel& k, const NeighborhoodSpec& nb, int refine,
                         Exec mode)
{
    check_solver_kernel(k);
    const Grid& g = u.grid;
    const double h = g.h;
    const double delta = nb.horizon;
    if (!(delta > 0.0)) throw std::invalid_argument("energy_norms: horizon must be positive");

    ConvexTemplate tpl_poly = ConvexTemplate::from_spec(nb);  // odd n is fine here
    double inner_radius =
        (nb.strategy == Strategy::Ball) ? delta : delta * std::cos(M_PI / nb.sides);
    ConvexTemplate tpl_trunc = ConvexTemplate::disk(inner_radius);
    ConvexTemplate tpl_ball = ConvexTemplate::disk(delta);

    const int radius = ceil_cells(delta / h) + 1;
    TemplateWeights mt = template_masses(tpl_trunc, k, delta, h, radius, refine);
    TemplateWeights mp = template_masses(tpl_poly, k, delta, h, radius, refine);
    TemplateWeights mb = template_masses(tpl_ball, k, delta, h, radius, refine);
    mirror_masses(mt, radius, false);
    mirror_masses(mb, radius, false);
    // an odd template enters through the symmetrized kernel (1_T(z) + 1_T(-z))/2
    mirror_masses(mp, radius, nb.strategy == Strategy::RegularNGon && nb.sides % 2 != 0);

    // padded copy with zeros on the constrained layer
    const int side = g.side();
    std::vector<double> up(std::size_t(side) * side, 0.0);
    for (std::int64_t fi = 0; fi < g.free_count(); ++fi) {
        int i = g.layer + static_cast<int>(fi) / g.cells;
        int j = g.layer + static_cast<int>(fi) % g.cells;
        up[std::size_t(i) * side + j] = u.values[std::size_t(fi)];
    }

    const double h4 = h * h * h * h;
    const int wside = 2 * radius + 1;
    EnergyNorms en;
    for (int di = -radius; di <= radius; ++di) {
        for (int dj = -radius; dj <= radius; ++dj) {
            std::size_t idx = std::size_t(di + radius) * wside + (dj + radius);
            double wt = mt.mass[idx], wp = mp.mass[idx], wb = mb.mass[idx];
            if (wb <= 0.0 && wp <= 0.0 && wt <= 0.0) continue;
            // sum of squared differences for this offset, shared by all variants
            int i0 = std::max(0, -di), i1 = std::min(side, side - di);
            int j0 = std::max(0, -dj), j1 = std::min(side, side - dj);
            double ss = 0.0;
            if (mode == Exec::Parallel) {
#pragma omp parallel for schedule(static) reduction(+ : ss)
                for (int i = i0; i < i1; ++i) {
                    const double* row = up.data() + std::size_t(i) * side;
                    const double* shifted = up.data() + std::size_t(i + di) * side + dj;
                    double acc = 0.0;
                    for (int j = j0; j < j1; ++j) {
                        double d = shifted[j] - row[j];
                        acc += d * d;
                    }
                    ss += acc;
                }
            } else {
                for (int i = i0; i < i1; ++i) {
                    const double* row = up.data() + std::size_t(i) * side;
                    const double* shifted = up.data() + std::size_t(i + di) * side + dj;
                    double acc = 0.0;
                    for (int j = j0; j < j1; ++j) {
                        double d = shifted[j] - row[j];
                        acc += d * d;
                    }
                    ss += acc;
                }
            }
            double common = ss * h4;
            en.truncated_ball += wt * common;
            en.polygon += wp * common;
            en.full_ball += wb * common;
        }
    }
    return en;
}

}  // namespace nonlocal
