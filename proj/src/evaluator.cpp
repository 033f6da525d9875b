#include <cmath>

#include "hyperlab/coulomb.hpp"

namespace hyperlab {

// Ewald split: E = E_mesh + E_near. The mesh part is the periodic field of
// Gaussian-screened charges (width sigma_w) minus the uniform background,
// summed over the frequency lattice up to the Gaussian cutoff. The near part
// swaps, within r_cut, each Gaussian charge for the exact uniform-disk charge.
// sigma_w and the cutoff depend only on the configuration, so fields at
// different eta share the mesh part exactly.

FieldEvaluator::FieldEvaluator(const PointConfiguration& cfg, double eta, double sigma_w)
    : cfg_(cfg), neighbors_(cfg_, 1.0), eta_(eta), sigma_(sigma_w) {
    const double L = cfg_.box.L;
    sigma_ = std::min(sigma_, L / 16.0);
    rcut_ = std::max(eta_, 7.0 * sigma_) + 1e-9;
    // Gaussian factor below 1e-16 beyond the cutoff
    const double omega_cut = 1.3662 / sigma_;
    kmax_ = int(std::ceil(omega_cut * L));
    for (int k2 = 0; k2 <= kmax_; ++k2)
        for (int k1 = (k2 == 0 ? 1 : -kmax_); k1 <= kmax_; ++k1) {
            if (std::int64_t(k1) * k1 + std::int64_t(k2) * k2 > std::int64_t(kmax_) * kmax_)
                continue;
            ks_.push_back({k1, k2});
        }
    rho_hat_.resize(ks_.size());
    for (std::size_t i = 0; i < ks_.size(); ++i) {
        const double f1 = ks_[i].k1, f2 = ks_[i].k2;
        double re = 0.0, im = 0.0;
        for (std::size_t p = 0; p < cfg_.atoms(); ++p) {
            const double ph = -2.0 * M_PI * (f1 * cfg_.pos[p].x + f2 * cfg_.pos[p].y) / L;
            re += cfg_.mult[p] * std::cos(ph);
            im += cfg_.mult[p] * std::sin(ph);
        }
        rho_hat_[i] = {re, im};
    }
}

Point2 FieldEvaluator::eval(Point2 z) const {
    const double L = cfg_.box.L;
    double ex = 0.0, ey = 0.0;
    // mesh: E = (c_d/L^2) sum_k rho_hat(k) G(k) i w /(2 pi |w|^2) e^{2 pi i w.z}, w = k/L;
    // half-plane entries carry their mirror via 2 Re(.)
    for (std::size_t i = 0; i < ks_.size(); ++i) {
        const double w1 = ks_[i].k1 / L, w2 = ks_[i].k2 / L;
        const double w2n = w1 * w1 + w2 * w2;
        const double gauss = std::exp(-2.0 * M_PI * M_PI * sigma_ * sigma_ * w2n);
        const double ph = 2.0 * M_PI * (w1 * z.x + w2 * z.y);
        // i * e^{i ph} * rho_hat = i (c+is)(r+ii) ; take 2*Re
        const double c = std::cos(ph), s = std::sin(ph);
        const double rr = rho_hat_[i].real(), ri = rho_hat_[i].imag();
        const double common = kCd / (L * L) * gauss / (2.0 * M_PI * w2n);
        // Re[i e^{iph} rho_hat] = -(s*rr + c*ri)
        const double re_part = -(s * rr + c * ri);
        ex += 2.0 * common * w1 * re_part;
        ey += 2.0 * common * w2 * re_part;
    }
    // near: swap Gaussian charges for uniform-disk charges within r_cut
    neighbors_.for_neighbors(z, rcut_, [&](std::uint32_t idx, double d2) {
        const double d = std::sqrt(d2);
        if (d < 1e-12) return;
        const double mdisk = std::min(1.0, d2 / (eta_ * eta_));
        const double mgauss = 1.0 - std::exp(-d2 / (2.0 * sigma_ * sigma_));
        const double t = double(cfg_.mult[idx]) * (mdisk - mgauss) / d2; // (m(d)/d) / d
        const double dx = cfg_.box.delta(z.x, cfg_.pos[idx].x);
        const double dy = cfg_.box.delta(z.y, cfg_.pos[idx].y);
        ex += t * dx;
        ey += t * dy;
    });
    return {ex, ey};
}

} // namespace hyperlab
