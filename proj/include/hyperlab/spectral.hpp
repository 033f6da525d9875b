#pragma once
#include <cstdint>
#include <vector>

#include "hyperlab/config.hpp"
#include "hyperlab/generators.hpp"
#include "hyperlab/kernels.hpp"

namespace hyperlab {

struct RadialBin {
    double omega = 0.0;  // bin center |w|
    double mean = 0.0;   // mean S over frequencies in the bin (and replicas)
    double stderr_ = 0.0;
    std::int64_t count = 0;  // number of torus frequencies represented
};

// Averaged periodogram on the torus frequency lattice w = k/L, k integer.
// Frequencies are stored on the half plane k2 > 0 or (k2 == 0 and k1 > 0);
// S(-w) = S(w) holds per sample, so each stored frequency represents itself
// and its mirror (weight 2).
struct SpectralEstimate {
    TorusBox box;
    double omega_max = 0.0;
    int replicas = 0;
    std::vector<FreqIndex> freqs;   // half-plane, 0 < |k|/L <= omega_max (subsampled per ring)
    std::vector<double> S;          // mean over replicas
    std::vector<double> S_var;      // sample variance over replicas (for stderr)
    std::vector<double> ring_weight; // torus frequencies represented by each entry (incl. mirror)
    std::vector<RadialBin> radial_bins; // width 1/L
    double count_second_moment = 0.0;   // E[count(B_1)^2], estimated alongside
    double mean_count_sq_residual = 0.0; // E[(N - L^2)^2]/L^2 (regular part of S at 0)

    double omega(std::size_t i) const {
        const double k1 = freqs[i].k1, k2 = freqs[i].k2;
        return std::sqrt(k1 * k1 + k2 * k2) / box.L;
    }
};

// Periodogram averaged over `replicas` fresh samples of the process.
// Rings with more than `max_per_ring` lattice frequencies are subsampled
// (seeded, deterministic); ring_weight keeps totals unbiased.
SpectralEstimate structure_factor(const ProcessSpec& spec, const TorusBox& box, int replicas,
                                  double omega_max, RngSeed seed, int max_per_ring = 64);

// calibrated Fourier kernel K_r(w) = J1(2 pi r w)^2 / (pi w^2); the
// normalization is pinned by the Poisson identity sigma = 1 (flat unit spectrum)
double jr_fourier(double omega_norm, double r);

// sigma(r) = sum over torus frequencies of K_r(|w|) S(w) / L^2 (w != 0)
double sigma_via_spectrum(const SpectralEstimate& est, double r);

struct ScIntegral {
    double value = 0.0;
    bool divergence_flag = false;
    std::vector<double> shell_mass;       // dyadic shells (2^-m-1, 2^-m], m = 0..
    std::vector<double> shell_flat_mass;  // same shells for a flat unit spectrum (lattice sum)
};

// infrared integral sum_{0 < |w| < 1} S(w)/|w|^2 / L^2. The divergence flag
// compares dyadic-shell masses against the flat-spectrum lattice sums: ratios
// staying >= 0.5 toward the infrared cutoff flag divergence, decaying ratios
// clear it (verdict thresholds match hustar_series).
ScIntegral sc_integral(const SpectralEstimate& est);

struct TranslationBoundedResult {
    double max_window_mass = 0.0;
    double ratio = 0.0;
    bool pass = false;
};

// max over unit-radius frequency windows of spectral mass, divided by
// E[count(B_1)^2]; pass when below the generous desk-scale constant 50.
TranslationBoundedResult translation_bounded_check(const SpectralEstimate& est,
                                                   double count_second_moment);

// sum_{|w| >= 1} S(w)/|w|^3 / L^2 plus a recorded truncation bound
struct TailCubedResult {
    double value = 0.0;
    double truncation_bound = 0.0; // assuming S <= max observed radial mean beyond omega_max
};
TailCubedResult tail_cubed_integral(const SpectralEstimate& est);

// Radially binned pair-correlation estimate from an ensemble.
struct PairCorrelation {
    double dr = 0.0;
    std::vector<double> rho2;  // mean rho_2 over each bin [i dr, (i+1) dr)
    double intensity = 1.0;
};
PairCorrelation estimate_pair_correlation(const std::vector<PointConfiguration>& ensemble,
                                          double dr, double v_max);

// Truncated intrinsic energy: integral of -(log|v| + f_eta(v)) (rho2 - 1) over
// |v| <= v_max. The eta-spread self-interaction constant is reported
// separately, never folded into the integral.
struct CoulIntrinsic {
    double off_diagonal = 0.0;
    double diagonal_constant = 0.0; // energy of one eta-spread charge: -ln(eta) - 0.110693998
};
CoulIntrinsic coul_intrinsic(const PairCorrelation& pc, double eta, double v_max);

} // namespace hyperlab
