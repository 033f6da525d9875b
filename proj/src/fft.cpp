#include "hyperlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace hyperlab {

namespace {

// One pair of FFTW plans per grid size. Plans are created with
// FFTW_ESTIMATE|FFTW_UNALIGNED so they can execute on any caller buffer via
// the new-array interface (thread-safe); creation itself is serialized.
struct PlanPair {
    fftw_plan fwd = nullptr, bwd = nullptr;
};

std::mutex g_plan_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

PlanPair get_plans(int n) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> real(std::size_t(n) * n);
    std::vector<fftw_complex> cplx(std::size_t(n) * (n / 2 + 1));
    PlanPair p;
    p.fwd = fftw_plan_dft_r2c_2d(n, n, real.data(), cplx.data(),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_c2r_2d(n, n, cplx.data(), real.data(),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    cache[n] = p;
    return p;
}

} // namespace

HalfSpectrum fft_forward(const ScalarFieldGrid& g) {
    const int n = g.n;
    PlanPair p = get_plans(n);
    HalfSpectrum s;
    s.n = n;
    s.c.resize(std::size_t(n) * (n / 2 + 1));
    std::vector<double> in(g.v); // r2c destroys input
    fftw_execute_dft_r2c(p.fwd, in.data(), reinterpret_cast<fftw_complex*>(s.c.data()));
    return s;
}

ScalarFieldGrid fft_backward(const HalfSpectrum& s, const TorusBox& box) {
    const int n = s.n;
    PlanPair p = get_plans(n);
    ScalarFieldGrid g(box, n);
    std::vector<std::complex<double>> in(s.c); // c2r destroys input
    fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(in.data()), g.v.data());
    const double scale = 1.0 / (double(n) * double(n));
    for (auto& v : g.v) v *= scale;
    return g;
}

VectorFieldGrid gradient_spectral(const ScalarFieldGrid& phi) {
    const int n = phi.n;
    const double L = phi.box.L;
    HalfSpectrum s = fft_forward(phi);
    HalfSpectrum sx = s, sy = s;
    for (int i = 0; i < n; ++i) {
        const double kx = 2.0 * M_PI * signed_freq(i, n) / L;
        for (int j = 0; j <= n / 2; ++j) {
            const double ky = 2.0 * M_PI * j / L;
            const std::complex<double> v = s.at(i, j);
            sx.at(i, j) = std::complex<double>(0.0, kx) * v;
            sy.at(i, j) = std::complex<double>(0.0, ky) * v;
        }
    }
    VectorFieldGrid out(phi.box, n);
    out.x = fft_backward(sx, phi.box).v;
    out.y = fft_backward(sy, phi.box).v;
    return out;
}

ScalarFieldGrid divergence_spectral(const VectorFieldGrid& v) {
    const int n = v.n;
    const double L = v.box.L;
    ScalarFieldGrid gx(v.box, n), gy(v.box, n);
    gx.v = v.x;
    gy.v = v.y;
    HalfSpectrum sx = fft_forward(gx), sy = fft_forward(gy);
    for (int i = 0; i < n; ++i) {
        const double kx = 2.0 * M_PI * signed_freq(i, n) / L;
        for (int j = 0; j <= n / 2; ++j) {
            const double ky = 2.0 * M_PI * j / L;
            sx.at(i, j) = std::complex<double>(0.0, kx) * sx.at(i, j) +
                          std::complex<double>(0.0, ky) * sy.at(i, j);
        }
    }
    return fft_backward(sx, v.box);
}

ScalarFieldGrid curl_spectral(const VectorFieldGrid& v) {
    const int n = v.n;
    const double L = v.box.L;
    ScalarFieldGrid gx(v.box, n), gy(v.box, n);
    gx.v = v.x;
    gy.v = v.y;
    HalfSpectrum sx = fft_forward(gx), sy = fft_forward(gy);
    for (int i = 0; i < n; ++i) {
        const double kx = 2.0 * M_PI * signed_freq(i, n) / L;
        for (int j = 0; j <= n / 2; ++j) {
            const double ky = 2.0 * M_PI * j / L;
            sx.at(i, j) = std::complex<double>(0.0, kx) * sy.at(i, j) -
                          std::complex<double>(0.0, ky) * sx.at(i, j);
        }
    }
    return fft_backward(sx, v.box);
}

ScalarFieldGrid poisson_solve_spectral(const ScalarFieldGrid& src) {
    const int n = src.n;
    const double L = src.box.L;
    HalfSpectrum s = fft_forward(src);
    for (int i = 0; i < n; ++i) {
        const double kx = 2.0 * M_PI * signed_freq(i, n) / L;
        for (int j = 0; j <= n / 2; ++j) {
            const double ky = 2.0 * M_PI * j / L;
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0)
                s.at(i, j) = 0.0; // zero-mean gauge
            else
                s.at(i, j) /= k2;
        }
    }
    return fft_backward(s, src.box);
}

} // namespace hyperlab
