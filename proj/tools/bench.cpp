// Compares the FFT/OpenMP production kernels against their serial
// direct-scan references on a shared random input, reporting wall times
// and agreement.
#include <chrono>
#include <cstdio>

#include "nscrit/io.hpp"

using namespace nscrit;
using clk = std::chrono::steady_clock;

static double seconds(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main() {
    GridPtr grid = make_grid(3, 1.0, 16, 1.0 / 64, 1.0, 12,
                             TimeSpacing::Geometric);
    std::mt19937_64 rng(7);
    SpaceTimeField u = random_scalar_evolution(grid, rng, 4);
    NormSampling s = default_sampling(*grid);
    s.center_stride = 2;  // keep the serial scans tractable

    auto t0 = clk::now();
    NormReport fast_y2 = norm_Y2(u, s);
    auto t1 = clk::now();
    NormReport slow_y2 = ref::norm_Y2_direct(u, s);
    auto t2 = clk::now();
    std::printf("y2      fft+omp %8.3fs  direct %8.3fs  rel.diff %.2e\n",
                seconds(t0, t1), seconds(t1, t2),
                std::abs(fast_y2.value - slow_y2.value) /
                    std::max(slow_y2.value, 1e-300));

    t0 = clk::now();
    NormReport fast_m = norm_morrey(u, 2.0, 5.0, s);
    t1 = clk::now();
    NormReport slow_m = ref::norm_morrey_direct(u, 2.0, 5.0, s);
    t2 = clk::now();
    std::printf("morrey  fft+omp %8.3fs  direct %8.3fs  rel.diff %.2e\n",
                seconds(t0, t1), seconds(t1, t2),
                std::abs(fast_m.value - slow_m.value) /
                    std::max(slow_m.value, 1e-300));

    GridPtr small = make_grid(3, 1.0, 16, 1.0 / 16, 1.0, 10,
                              TimeSpacing::Geometric);
    std::mt19937_64 rng2(8);
    SpaceTimeField w = random_scalar_evolution(small, rng2, 3);
    t0 = clk::now();
    SpaceTimeField Z = riesz_potential(w, 1.0);
    t1 = clk::now();
    const int ti = small->n_time() - 1;
    const std::int64_t xi = small->n_points() / 3;
    double direct = ref::riesz_potential_direct(w, 1.0, ti, xi);
    t2 = clk::now();
    std::printf("riesz   fft+omp %8.3fs  direct(one sample) %8.3fs  rel.diff %.2e\n",
                seconds(t0, t1), seconds(t1, t2),
                std::abs(Z.at(0, ti, xi) - direct) / std::max(direct, 1e-300));
    return 0;
}
