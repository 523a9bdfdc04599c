#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nonlocal/exec.hpp"
#include "nonlocal/geometry.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/operators.hpp"

namespace nonlocal {

// Uniform cells over [-L, 1+L]^2 with L = layer*h; the layer is the
// delta-interaction region around Omega = (0,1)^2 rounded up to whole cells.
// A cell is free when its center lies in Omega and constrained otherwise.
struct Grid {
    double h = 0.0;
    int cells = 0;  // cells across Omega (1/h)
    int layer = 0;  // constrained cells on each side

    int side() const { return cells + 2 * layer; }
    std::int64_t total() const { return std::int64_t(side()) * side(); }
    std::int64_t free_count() const { return std::int64_t(cells) * cells; }

    bool is_free(int i, int j) const
    {
        return i >= layer && i < layer + cells && j >= layer && j < layer + cells;
    }
    // center of cell (i, j); indices run over the padded grid
    Point2 center(int i, int j) const
    {
        return {(i - layer + 0.5) * h, (j - layer + 0.5) * h};
    }
    std::int64_t free_index(int i, int j) const
    {
        return std::int64_t(i - layer) * cells + (j - layer);
    }
};

Grid build_grid(double h, double delta);

// Convolution stencil of the assembled bilinear form: centrally symmetric
// nonnegative weights on integer offsets, zero offset excluded.
struct StencilEntry {
    int di = 0;
    int dj = 0;
    double w = 0.0;
};

struct Stencil {
    std::vector<StencilEntry> entries;
    int radius = 0;
    double h = 0.0;
    double weight_sum = 0.0;
};

// w(D) = 2 * h^4 * avg_cell(gamma_delta * 1_template); cells well inside the
// template use the midpoint value, cells near the template boundary use the
// exact overlap area with the kernel averaged over refine x refine sub-points
// of the covered part. Requires an even side count for RegularNGon and s < d.
Stencil build_stencil(const Grid& grid, const Kernel& k, const NeighborhoodSpec& nb,
                      int refine = 4);

// Solution values on the free cells (constrained cells are implicit).
struct Field {
    std::vector<double> values;
    Grid grid;
};

// (A u)_i = sum_D w(D) (u_i - u_{i+D}) with u = 0 on constrained cells.
Field assemble_apply(const Stencil& stencil, const Field& u, Exec mode = Exec::Parallel);

struct NoConvergenceError : std::runtime_error {
    NoConvergenceError(const std::string& msg, double res, std::int64_t its)
        : std::runtime_error(msg), residual(res), iterations(its) {}
    double residual = 0.0;
    std::int64_t iterations = 0;
};

// Conjugate gradient for (A/h^2) u = f with rows scaled so the operator is
// consistent with -L_{delta,n} at cell centers. `constraint` optionally
// prescribes inhomogeneous values on the constrained layer (volume constraint
// g instead of 0); they are lifted into the right-hand side.
Field solve(const Stencil& stencil, const Grid& grid, const ScalarField& f,
            double tol = 1e-10, const ScalarField* constraint = nullptr,
            Exec mode = Exec::Parallel);

// sqrt( sum_free h^2 (u_i - exact(c_i))^2 )
double l2_error(const Field& u, const ScalarField& exact);

// The three energy norms of the sandwich inequality, evaluated with one pass
// and shared kernel values per offset: truncated ball of radius
// inradius(template) <= polygon template <= full ball of radius delta.
struct EnergyNorms {
    double truncated_ball = 0.0;
    double polygon = 0.0;
    double full_ball = 0.0;
};

EnergyNorms energy_norms(const Field& u, const Kernel& k, const NeighborhoodSpec& nb,
                         int refine = 4, Exec mode = Exec::Parallel);

// helper: sample a function on the free cells (constrained cells stay zero)
Field sample_field(const Grid& grid, const ScalarField& f);

}  // namespace nonlocal
