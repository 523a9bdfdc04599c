// Compares the serial reference kernels against the OpenMP ones: stencil
// matvec, energy pair sums and a full manufactured solve.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nonlocal/solver.hpp"

using namespace nonlocal;

namespace {

double now_seconds()
{
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_best_of(int reps, F&& f)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_seconds();
        f();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

}  // namespace

int main()
{
    const double delta = 1.0 / 16.0;
    const double h = 1.0 / 256.0;
    Kernel kernel = make_kernel(KernelFamily::Constant, 2);
    NeighborhoodSpec nb{Strategy::RegularNGon, delta, 8, 0.0};
    Grid grid = build_grid(h, delta);
    Stencil st = build_stencil(grid, kernel, nb);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Field u;
    u.grid = grid;
    u.values.resize(std::size_t(grid.free_count()));
    for (double& v : u.values) v = dist(rng);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    std::printf("grid %dx%d cells, layer %d, stencil %zu offsets\n\n", grid.cells, grid.cells,
                grid.layer, st.entries.size());
    std::printf("%-22s %12s %12s %9s\n", "kernel", "serial [s]", "openmp [s]", "speedup");

    {
        double ts = time_best_of(5, [&] { assemble_apply(st, u, Exec::Serial); });
        double tp = time_best_of(5, [&] { assemble_apply(st, u, Exec::Parallel); });
        std::printf("%-22s %12.4f %12.4f %8.2fx\n", "stencil matvec", ts, tp, ts / tp);
    }
    {
        double ts = time_best_of(3, [&] { energy_norms(u, kernel, nb, 4, Exec::Serial); });
        double tp = time_best_of(3, [&] { energy_norms(u, kernel, nb, 4, Exec::Parallel); });
        std::printf("%-22s %12.4f %12.4f %8.2fx\n", "energy pair sums", ts, tp, ts / tp);
    }
    {
        ScalarField f{[](Point2 p) { return -2.0 * (p.y + 1.0); }, nullptr, nullptr};
        ScalarField u0{[](Point2 p) { return p.x * p.x * p.y + p.y * p.y; }, nullptr, nullptr};
        double ts = time_best_of(1, [&] { solve(st, grid, f, 1e-10, &u0, Exec::Serial); });
        double tp = time_best_of(1, [&] { solve(st, grid, f, 1e-10, &u0, Exec::Parallel); });
        std::printf("%-22s %12.4f %12.4f %8.2fx\n", "manufactured solve", ts, tp, ts / tp);
    }
    return 0;
}
