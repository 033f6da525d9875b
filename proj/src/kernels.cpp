#include "hyperlab/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "hyperlab/parallel.hpp"

namespace hyperlab {

int thread_budget() {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("HYPERLAB_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::max(1, n);
}

double deterministic_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return deterministic_sum(xs.first(half)) + deterministic_sum(xs.subspan(half));
}

namespace kernels {

std::vector<std::int64_t> batch_counts(const PointGrid& grid, std::span<const Point2> centers,
                                       double r) {
    std::vector<std::int64_t> out(centers.size());
    const int nt = thread_budget();
#pragma omp parallel for schedule(dynamic, 8) num_threads(nt)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(centers.size()); ++i)
        out[std::size_t(i)] = grid.count_in_ball(centers[std::size_t(i)], r);
    return out;
}

std::vector<double> periodogram(const PointConfiguration& cfg, std::span<const FreqIndex> freqs) {
    const std::size_t np = cfg.atoms();
    const double L = cfg.box.L;
    int k1max = 0, k2max = 0;
    for (const auto& f : freqs) {
        k1max = std::max(k1max, std::abs(f.k1));
        k2max = std::max(k2max, std::abs(f.k2));
    }
    // phase tables, layout [k][point] so the frequency loop streams contiguously;
    // filled by recurrence e^{-2pi i (k+1) x/L} = e^{-2pi i k x/L} * w
    const int n1 = 2 * k1max + 1;
    std::vector<std::complex<double>> phx(std::size_t(n1) * np), phy(std::size_t(k2max + 1) * np);
    const int nt = thread_budget();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::ptrdiff_t p = 0; p < std::ptrdiff_t(np); ++p) {
        const double ax = -2.0 * M_PI * cfg.pos[std::size_t(p)].x / L;
        const double ay = -2.0 * M_PI * cfg.pos[std::size_t(p)].y / L;
        const std::complex<double> wx(std::cos(ax), std::sin(ax));
        const std::complex<double> wy(std::cos(ay), std::sin(ay));
        const double m = double(cfg.mult[std::size_t(p)]);
        std::complex<double> cx = m; // multiplicity folded into the x table
        for (int k = 0; k <= k1max; ++k) {
            phx[std::size_t(k1max + k) * np + std::size_t(p)] = cx;
            cx *= wx;
        }
        std::complex<double> cy = 1.0;
        for (int k = 0; k <= k2max; ++k) {
            phy[std::size_t(k) * np + std::size_t(p)] = cy;
            cy *= wy;
        }
    }
    // mirrored x entries: conjugate of the positive-k value (m real)
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::ptrdiff_t k = 1; k <= k1max; ++k) {
        const auto* src = &phx[std::size_t(k1max + k) * np];
        auto* dst = &phx[std::size_t(k1max - k) * np];
        for (std::size_t p = 0; p < np; ++p) dst[p] = std::conj(src[p]);
    }

    std::vector<double> S(freqs.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(freqs.size()); ++i) {
        const auto f = freqs[std::size_t(i)];
        const auto* ax = &phx[std::size_t(k1max + f.k1) * np];
        const auto* ay = &phy[std::size_t(f.k2) * np];
        double re = 0.0, im = 0.0;
        for (std::size_t p = 0; p < np; ++p) {
            const double xr = ax[p].real(), xi = ax[p].imag();
            const double yr = ay[p].real(), yi = ay[p].imag();
            re += xr * yr - xi * yi;
            im += xr * yi + xi * yr;
        }
        S[std::size_t(i)] = (re * re + im * im) / (L * L);
    }
    return S;
}

std::vector<double> pair_distance_histogram(const PointConfiguration& cfg, double dr, int nbins) {
    const double rmax = dr * nbins;
    const PointGrid grid(cfg, std::max(1.0, rmax / 4.0));
    const int nt = thread_budget();
    std::vector<std::vector<double>> partial(std::size_t(nt), std::vector<double>(nbins, 0.0));
#pragma omp parallel num_threads(nt)
    {
        auto& hist = partial[std::size_t(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 32)
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(cfg.atoms()); ++i) {
            const double mi = cfg.mult[std::size_t(i)];
            grid.for_neighbors(cfg.pos[std::size_t(i)], rmax, [&](std::uint32_t j, double d2) {
                if (j < std::uint32_t(i)) return; // unordered pairs once
                const double d = std::sqrt(d2);
                const int b = int(d / dr);
                if (b >= nbins) return;
                if (j == std::uint32_t(i)) {
                    // coincident pairs within one atom: m*(m-1) ordered pairs at distance 0
                    hist[0] += mi * (mi - 1.0);
                } else {
                    hist[std::size_t(b)] += 2.0 * mi * double(cfg.mult[j]);
                }
            });
        }
    }
    std::vector<double> out(std::size_t(nbins), 0.0);
    for (int t = 0; t < nt; ++t) // fixed merge order
        for (int b = 0; b < nbins; ++b) out[std::size_t(b)] += partial[std::size_t(t)][std::size_t(b)];
    return out;
}

double sum_squares(std::span<const double> a, std::span<const double> b) {
    std::vector<double> sq(a.size());
    const int nt = thread_budget();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(a.size()); ++i)
        sq[std::size_t(i)] = a[std::size_t(i)] * a[std::size_t(i)] +
                             b[std::size_t(i)] * b[std::size_t(i)];
    return deterministic_sum(sq);
}

} // namespace kernels

namespace serial_reference {

std::vector<std::int64_t> batch_counts(const PointConfiguration& cfg,
                                       std::span<const Point2> centers, double r) {
    std::vector<std::int64_t> out(centers.size(), 0);
    const double r2 = r * r;
    for (std::size_t c = 0; c < centers.size(); ++c)
        for (std::size_t i = 0; i < cfg.atoms(); ++i)
            if (periodic_dist2(cfg.pos[i], centers[c], cfg.box) <= r2) out[c] += cfg.mult[i];
    return out;
}

std::vector<double> periodogram(const PointConfiguration& cfg, std::span<const FreqIndex> freqs) {
    const double L = cfg.box.L;
    std::vector<double> S(freqs.size());
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        double re = 0.0, im = 0.0;
        for (std::size_t p = 0; p < cfg.atoms(); ++p) {
            const double phase =
                -2.0 * M_PI * (freqs[i].k1 * cfg.pos[p].x + freqs[i].k2 * cfg.pos[p].y) / L;
            re += cfg.mult[p] * std::cos(phase);
            im += cfg.mult[p] * std::sin(phase);
        }
        S[i] = (re * re + im * im) / (L * L);
    }
    return S;
}

std::vector<double> pair_distance_histogram(const PointConfiguration& cfg, double dr, int nbins) {
    std::vector<double> hist(std::size_t(nbins), 0.0);
    const double rmax = dr * nbins;
    for (std::size_t i = 0; i < cfg.atoms(); ++i) {
        hist[0] += double(cfg.mult[i]) * (double(cfg.mult[i]) - 1.0);
        for (std::size_t j = i + 1; j < cfg.atoms(); ++j) {
            const double d = periodic_distance(cfg.pos[i], cfg.pos[j], cfg.box);
            if (d >= rmax) continue;
            hist[std::size_t(d / dr)] += 2.0 * double(cfg.mult[i]) * double(cfg.mult[j]);
        }
    }
    return hist;
}

double sum_squares(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * a[i] + b[i] * b[i];
    return s;
}

} // namespace serial_reference

} // namespace hyperlab
