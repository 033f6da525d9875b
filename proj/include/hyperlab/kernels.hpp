#pragma once
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hyperlab/config.hpp"

namespace hyperlab {

// Integer frequency k on the torus lattice; physical frequency is k/L.
struct FreqIndex {
    std::int32_t k1 = 0, k2 = 0;
};

// Hot loops, OpenMP-parallel. Every kernel has a serial twin in
// hyperlab::serial_reference with the same contract; the test suite compares
// them and the bench target times them against each other.
namespace kernels {

// counts at many centers (parallel over centers)
std::vector<std::int64_t> batch_counts(const PointGrid& grid, std::span<const Point2> centers,
                                       double r);

// averaged periodogram values S(k) = |sum_j m_j e^{-2 pi i (k/L).x_j}|^2 / L^2
// for each requested frequency (parallel over frequencies, phase tables per axis)
std::vector<double> periodogram(const PointConfiguration& cfg, std::span<const FreqIndex> freqs);

// histogram of pairwise periodic distances weighted by m_i*m_j (ordered pairs
// x != y counted once with weight 2*mi*mj for i<j and mi*(mi-1) on the diagonal),
// bins [i*dr, (i+1)*dr), distances beyond nbins*dr ignored
std::vector<double> pair_distance_histogram(const PointConfiguration& cfg, double dr, int nbins);

// sum of squares of two equally sized arrays (field energy reduction)
double sum_squares(std::span<const double> a, std::span<const double> b);

} // namespace kernels

namespace serial_reference {

std::vector<std::int64_t> batch_counts(const PointConfiguration& cfg,
                                       std::span<const Point2> centers, double r);
std::vector<double> periodogram(const PointConfiguration& cfg, std::span<const FreqIndex> freqs);
std::vector<double> pair_distance_histogram(const PointConfiguration& cfg, double dr, int nbins);
double sum_squares(std::span<const double> a, std::span<const double> b);

} // namespace serial_reference

} // namespace hyperlab
