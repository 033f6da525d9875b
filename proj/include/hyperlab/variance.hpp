#pragma once
#include <string>
#include <vector>

#include "hyperlab/config.hpp"
#include "hyperlab/generators.hpp"

namespace hyperlab {

struct VarianceEntry {
    double r = 0.0;
    double sigma = 0.0;   // Var[count in B_r] / (pi r^2)
    double stderr_ = 0.0; // replica-level jackknife
    int replicas = 0;
};

struct VarianceCurve {
    std::vector<VarianceEntry> entries;

    const VarianceEntry* find(double r) const;
};

// Monte Carlo estimate of the rescaled number variance at the given radii.
// One count per replica at an independent uniform center by default;
// centers_per_replica > 1 averages counts before taking the variance
// (variance-reduction toggle, biased for Var, off by default).
VarianceCurve estimate_sigma(const ProcessSpec& spec, const TorusBox& box,
                             const std::vector<double>& radii, int replicas,
                             int centers_per_replica, RngSeed seed);

struct HuStarReport {
    std::vector<double> dyadic_sigma;   // sigma(2^m), m = 0..n_max (clamped >= 0)
    std::vector<double> partial_sums;
    int n_max = 0;
    enum class Verdict { Converging, Diverging, Inconclusive } verdict = Verdict::Inconclusive;
    double slope = 0.0;                 // fitted log2 decay exponent of the tail terms
    std::vector<std::string> warnings;  // clamped negatives, dropped radii
};

std::string to_string(HuStarReport::Verdict v);

// Partial sums of sigma over dyadic radii 2^0..2^n_max and a convergence
// verdict: converging when tail terms decay with fitted exponent < -0.2,
// diverging when they stay >= 0.5 over the last three dyads, else inconclusive.
HuStarReport hustar_series(const VarianceCurve& curve, int n_max, double box_side);

// normalized lens overlap: area(B_r(0) ∩ B_r(v)) / (pi r^2); 1 at v=0, 0 beyond 2r
double jr_real(Point2 v, double r);

// sigma(r) from the empirical correlation measure of an ensemble:
// 1 + (1/L^2) E[sum_{x != y} j_r(x-y)] - pi r^2, pair separations binned
// at resolution 0.05 r.
double sigma_from_pairs(const std::vector<PointConfiguration>& ensemble, double r);

// empirical mass of the correlation measure over |v| <= vmax (sum-rule diagnostic)
double correlation_mass(const std::vector<PointConfiguration>& ensemble, double vmax);

} // namespace hyperlab
