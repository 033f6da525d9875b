// Timing comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>

#include "hyperlab/generators.hpp"
#include "hyperlab/kernels.hpp"
#include "hyperlab/parallel.hpp"

using namespace hyperlab;
namespace chrono = std::chrono;

namespace {

template <class F>
double time_ms(F&& fn, int iters = 3) {
    double best = 1e300;
    for (int i = 0; i < iters; ++i) {
        const auto t0 = chrono::steady_clock::now();
        fn();
        const auto t1 = chrono::steady_clock::now();
        best = std::min(best, chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main() {
    std::printf("threads: %d\n", thread_budget());
    const TorusBox box(64.0);
    const PointConfiguration cfg = gen_poisson(box, 1.0, {42, 0});
    const PointGrid grid(cfg, 1.0);

    // ball counts
    std::vector<Point2> centers;
    CounterRng rng({1, 2});
    for (int i = 0; i < 2000; ++i)
        centers.push_back({rng.uniform(0.0, box.L), rng.uniform(0.0, box.L)});
    const double t_counts_omp = time_ms([&] { kernels::batch_counts(grid, centers, 8.0); });
    const double t_counts_ref =
        time_ms([&] { serial_reference::batch_counts(cfg, centers, 8.0); });
    std::printf("batch_counts      omp %8.2f ms   serial %8.2f ms\n", t_counts_omp, t_counts_ref);

    // periodogram
    std::vector<FreqIndex> freqs;
    for (int k2 = 0; k2 <= 48; ++k2)
        for (int k1 = (k2 == 0 ? 1 : -48); k1 <= 48; ++k1) freqs.push_back({k1, k2});
    const double t_per_omp = time_ms([&] { kernels::periodogram(cfg, freqs); });
    const double t_per_ref = time_ms([&] { serial_reference::periodogram(cfg, freqs); }, 1);
    std::printf("periodogram       omp %8.2f ms   serial %8.2f ms\n", t_per_omp, t_per_ref);

    // pair histogram
    const double t_hist_omp = time_ms([&] { kernels::pair_distance_histogram(cfg, 0.25, 64); });
    const double t_hist_ref =
        time_ms([&] { serial_reference::pair_distance_histogram(cfg, 0.25, 64); }, 1);
    std::printf("pair_histogram    omp %8.2f ms   serial %8.2f ms\n", t_hist_omp, t_hist_ref);

    // energy reduction
    std::vector<double> a(1 << 22), b(1 << 22);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = std::sin(double(i));
        b[i] = std::cos(double(i));
    }
    const double t_sq_omp = time_ms([&] { kernels::sum_squares(a, b); });
    const double t_sq_ref = time_ms([&] { serial_reference::sum_squares(a, b); });
    std::printf("sum_squares       omp %8.2f ms   serial %8.2f ms\n", t_sq_omp, t_sq_ref);
    return 0;
}
