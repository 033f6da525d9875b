#pragma once
#include <complex>
#include <vector>

#include "hyperlab/grid.hpp"

namespace hyperlab {

// Half-spectrum of a real n x n grid (r2c layout, n x (n/2+1), row-major).
struct HalfSpectrum {
    int n = 0;
    std::vector<std::complex<double>> c;

    std::complex<double>& at(int i, int j) { return c[std::size_t(i) * (n / 2 + 1) + j]; }
    std::complex<double> at(int i, int j) const { return c[std::size_t(i) * (n / 2 + 1) + j]; }
};

// Forward/backward transforms (FFTW, plans cached per size, backward scaled by 1/n^2).
HalfSpectrum fft_forward(const ScalarFieldGrid& g);
ScalarFieldGrid fft_backward(const HalfSpectrum& s, const TorusBox& box);

// signed frequency index of row i (k in [-n/2+1 .. n/2])
inline int signed_freq(int i, int n) { return i <= n / 2 ? i : i - n; }

// Spectral calculus on grids (exact inverses of each other up to FP):
VectorFieldGrid gradient_spectral(const ScalarFieldGrid& phi);
ScalarFieldGrid divergence_spectral(const VectorFieldGrid& v);
ScalarFieldGrid curl_spectral(const VectorFieldGrid& v); // scalar curl dEy/dx - dEx/dy

// zero-mean solution of -lap(phi) = src; requires src mean ~ 0
ScalarFieldGrid poisson_solve_spectral(const ScalarFieldGrid& src);

} // namespace hyperlab
