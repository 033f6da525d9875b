#include "hyperlab/coulomb.hpp"

#include <algorithm>
#include <cmath>

#include "hyperlab/fft.hpp"
#include "hyperlab/parallel.hpp"

namespace hyperlab {

namespace {
enum Purpose : std::uint64_t { kCondition = 301, kDiscCenter = 302 };
} // namespace

double f_eta(Point2 x, double eta) {
    const double d = std::sqrt(x.x * x.x + x.y * x.y);
    if (d >= eta || d <= 0.0) return d <= 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return std::max(0.0, std::log(eta / d));
}

namespace {
// antiderivative of sqrt(r^2 - u^2): (u sqrt(r^2-u^2) + r^2 asin(u/r)) / 2
inline double circA(double u, double r) {
    u = std::clamp(u, -r, r);
    return 0.5 * (u * std::sqrt(std::max(0.0, r * r - u * u)) + r * r * std::asin(u / r));
}

// area of disk(0, r) ∩ {u <= X, v <= Y}
double corner_area(double X, double Y, double r) {
    if (X <= -r || Y <= -r) return 0.0;
    if (X >= r && Y >= r) return M_PI * r * r;
    const double Xc = std::min(X, r);
    if (Y >= r) return 2.0 * (circA(Xc, r) - circA(-r, r));
    const double us = std::sqrt(std::max(0.0, r * r - Y * Y));
    auto I2 = [&](double a, double b) { return b > a ? 2.0 * (circA(b, r) - circA(a, r)) : 0.0; };
    auto I1 = [&](double a, double b) {
        return b > a ? Y * (b - a) + (circA(b, r) - circA(a, r)) : 0.0;
    };
    if (Y >= 0.0) {
        double area = I2(-r, std::min(Xc, -us));
        area += I1(-us, std::clamp(Xc, -us, us));
        area += I2(us, std::max(Xc, us));
        return area;
    }
    return I1(-us, std::clamp(Xc, -us, us));
}
} // namespace

double disk_cell_overlap(double cx, double cy, double r, double x0, double x1, double y0,
                         double y1) {
    return corner_area(x1 - cx, y1 - cy, r) - corner_area(x0 - cx, y1 - cy, r) -
           corner_area(x1 - cx, y0 - cy, r) + corner_area(x0 - cx, y0 - cy, r);
}

ScalarFieldGrid spread_charges(const PointConfiguration& cfg, double eta, int grid_n) {
    const double L = cfg.box.L;
    const double h = L / grid_n;
    if (h > eta / 4.0 + 1e-12)
        throw GridTooCoarse("spread_charges: need h <= eta/4, h=" + std::to_string(h) +
                            " eta=" + std::to_string(eta));
    ScalarFieldGrid dens(cfg.box, grid_n);
    const double inv_area = 1.0 / (M_PI * eta * eta);
    for (std::size_t a = 0; a < cfg.atoms(); ++a) {
        const double px = cfg.pos[a].x, py = cfg.pos[a].y;
        const double m = double(cfg.mult[a]);
        const int i0 = int(std::floor((px - eta) / h));
        const int i1 = int(std::floor((px + eta) / h));
        const int j0 = int(std::floor((py - eta) / h));
        const int j1 = int(std::floor((py + eta) / h));
        double deposited = 0.0;
        // first pass: exact overlap areas; second pass: renormalize to m
        std::vector<std::pair<std::size_t, double>> cells;
        cells.reserve(std::size_t(i1 - i0 + 1) * std::size_t(j1 - j0 + 1));
        for (int i = i0; i <= i1; ++i) {
            for (int j = j0; j <= j1; ++j) {
                const double ov = disk_cell_overlap(px, py, eta, i * h, (i + 1) * h, j * h, (j + 1) * h);
                if (ov <= 0.0) continue;
                int iw = i % grid_n;
                if (iw < 0) iw += grid_n;
                int jw = j % grid_n;
                if (jw < 0) jw += grid_n;
                cells.emplace_back(std::size_t(iw) * grid_n + jw, ov);
                deposited += ov;
            }
        }
        const double scale = m * inv_area * (M_PI * eta * eta / deposited) / (h * h);
        for (auto& [idx, ov] : cells) dens.v[idx] += ov * scale;
    }
    return dens;
}

double TruncatedField::energy_per_volume() const {
    return grid.energy() / grid.box.area();
}

double TruncatedField::divergence_residual() const {
    const ScalarFieldGrid div = divergence_spectral(grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < div.v.size(); ++i)
        worst = std::max(worst, std::abs(div.v[i] + c_d * (source_density.v[i] - 1.0)));
    return worst;
}

double TruncatedField::curl_residual() const {
    return curl_spectral(grid).max_abs();
}

TruncatedField solve_field(const PointConfiguration& cfg, double eta, int grid_n) {
    if (!cfg.box.integer_side()) throw NonNeutral("solve_field: box side must be integer");
    const std::int64_t target = std::int64_t(cfg.box.L) * std::int64_t(cfg.box.L);
    if (cfg.total_count() != target)
        throw NonNeutral("solve_field: configuration has " + std::to_string(cfg.total_count()) +
                         " points, neutrality needs " + std::to_string(target));
    TruncatedField f;
    f.eta = eta;
    f.config_hash = cfg.content_hash();
    f.source_density = spread_charges(cfg, eta, grid_n);
    ScalarFieldGrid src(cfg.box, grid_n);
    for (std::size_t i = 0; i < src.v.size(); ++i)
        src.v[i] = kCd * (f.source_density.v[i] - 1.0);
    const ScalarFieldGrid phi = poisson_solve_spectral(src);
    f.grid = gradient_spectral(phi);
    return f;
}

double energy_per_volume(const TruncatedField& field) { return field.energy_per_volume(); }

PointConfiguration condition_point_count(const PointConfiguration& cfg, RngSeed seed) {
    if (!cfg.box.integer_side())
        throw NonNeutral("condition_point_count: box side must be integer");
    const std::int64_t target = std::int64_t(cfg.box.L) * std::int64_t(cfg.box.L);
    const std::int64_t count = cfg.total_count();
    if (std::abs(count - target) > std::int64_t(0.2 * double(target)))
        throw CountTooFar("condition_point_count: |count - L^2| exceeds 0.2 L^2");
    if (count == target) return cfg;
    PointConfiguration out = cfg;
    CounterRng rng(substream(seed, kCondition));
    if (count > target) {
        for (std::int64_t k = count; k > target; --k) {
            // pick one of the k remaining unit charges uniformly
            std::uint64_t u = rng.uniform_below(std::uint64_t(k));
            for (std::size_t a = 0; a < out.atoms(); ++a) {
                if (u < std::uint64_t(out.mult[a])) {
                    if (--out.mult[a] == 0) {
                        out.mult[a] = out.mult.back();
                        out.pos[a] = out.pos.back();
                        out.mult.pop_back();
                        out.pos.pop_back();
                    }
                    break;
                }
                u -= std::uint64_t(out.mult[a]);
            }
        }
    } else {
        for (std::int64_t k = count; k < target; ++k)
            out.push({rng.uniform(0.0, cfg.box.L), rng.uniform(0.0, cfg.box.L)});
    }
    return out;
}

CoulEstimate coul_estimate(const ProcessSpec& spec, const TorusBox& box, double eta, int replicas,
                           int grid_n, RngSeed seed) {
    std::vector<double> energies(std::size_t(replicas), 0.0);
    const bool need_conditioning = !exact_count(spec);
    for (int rep = 0; rep < replicas; ++rep) {
        const RngSeed rs = seed.with_stream(seed.stream + std::uint64_t(rep));
        PointConfiguration cfg = sample(spec, box, rs);
        if (need_conditioning) cfg = condition_point_count(cfg, rs);
        energies[std::size_t(rep)] = solve_field(cfg, eta, grid_n).energy_per_volume();
    }
    CoulEstimate est;
    est.replicas = replicas;
    est.mean = deterministic_sum(energies) / replicas;
    double ss = 0.0;
    for (double e : energies) ss += (e - est.mean) * (e - est.mean);
    est.stderr_ = replicas > 1 ? std::sqrt(ss / (replicas - 1) / replicas) : 0.0;
    return est;
}

LocalEnergyCheck local_energy_lower_bound_check(const PointConfiguration& cfg,
                                                const TruncatedField& field, Point2 z, double M) {
    if (M < 10.0) throw PreconditionNotMet("local_energy_lower_bound_check: M must be >= 10");
    if (M > cfg.box.L / 2.0)
        throw PreconditionNotMet("local_energy_lower_bound_check: B_M does not fit the torus");
    if (double(count_in_ball(cfg, z, 1.0)) < M * M)
        throw PreconditionNotMet(
            "local_energy_lower_bound_check: fewer than M^2 points in B_1(z)");
    const int n = field.grid.n;
    const double h = field.grid.h();
    const double M2 = M * M;
    std::vector<double> terms;
    terms.reserve(std::size_t(M2 * M_PI / (h * h)) + 16);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Point2 c{(i + 0.5) * h, (j + 0.5) * h};
            if (periodic_dist2(c, z, cfg.box) <= M2) {
                const std::size_t idx = std::size_t(i) * n + j;
                terms.push_back(field.grid.x[idx] * field.grid.x[idx] +
                                field.grid.y[idx] * field.grid.y[idx]);
            }
        }
    }
    LocalEnergyCheck out;
    out.lhs = h * h * deterministic_sum(terms);
    out.rhs_shape = M * M * M * M * std::log(M);
    out.ratio = out.lhs / out.rhs_shape;
    return out;
}

DiscrepancyCheck discrepancy_bound_check(const ProcessSpec& spec, const TorusBox& box, double eta,
                                         double r, int replicas, int grid_n, RngSeed seed) {
    if (!(r < box.L / 2.0)) throw RadiusTooLarge("discrepancy_bound_check: r >= L/2");
    std::vector<double> sq(std::size_t(replicas), 0.0);
    for (int rep = 0; rep < replicas; ++rep) {
        const RngSeed rs = seed.with_stream(seed.stream + std::uint64_t(rep));
        const PointConfiguration cfg = sample(spec, box, rs);
        CounterRng crng(substream(rs, kDiscCenter));
        const Point2 z{crng.uniform(0.0, box.L), crng.uniform(0.0, box.L)};
        const double d = double(count_in_ball(cfg, z, r)) - M_PI * r * r;
        sq[std::size_t(rep)] = d * d;
    }
    DiscrepancyCheck out;
    out.lhs = deterministic_sum(sq) / replicas;
    const CoulEstimate ce = coul_estimate(spec, box, eta, std::min(replicas, 16), grid_n, seed);
    out.rhs = (ce.mean + 1.0) * r * r;
    out.ratio = out.lhs / out.rhs;
    return out;
}

EtaComparison eta_comparison_check(const PointConfiguration& cfg, const std::vector<double>& etas,
                                   int grid_n_per_unit) {
    EtaComparison out;
    out.etas = etas;
    const double L = cfg.box.L;
    for (double eta : etas) {
        // spacing rule per eta; power-of-two grid for the FFT
        int n = std::max(grid_n_per_unit * int(L), int(std::ceil(4.0 * L / eta)));
        int n2 = 1;
        while (n2 < n) n2 *= 2;
        out.energies.push_back(solve_field(cfg, eta, n2).energy_per_volume());
    }
    // smallest C with energy(1) <= energy(eta) + C eta across the table
    double e1 = 0.0;
    for (std::size_t i = 0; i < etas.size(); ++i)
        if (std::abs(etas[i] - 1.0) < 1e-12) e1 = out.energies[i];
    double C = 0.0;
    for (std::size_t i = 0; i < etas.size(); ++i)
        C = std::max(C, (e1 - out.energies[i]) / etas[i]);
    out.fitted_C = C;

    // Newton check: pointwise fields at eta = 0.5 and 1 agree outside all B_1 balls
    const FieldEvaluator ev_half(cfg, 0.5);
    const FieldEvaluator ev_one(cfg, 1.0);
    const PointGrid grid(cfg, 1.0);
    const int samples = 48;
    double scale = 0.0, dev = 0.0;
    int found = 0;
    for (int i = 0; i < samples; ++i) {
        for (int j = 0; j < samples; ++j) {
            const Point2 z{(i + 0.5) * L / samples, (j + 0.5) * L / samples};
            bool outside = true;
            grid.for_neighbors(z, 1.0 + 1e-9, [&](std::uint32_t, double) { outside = false; });
            if (!outside) continue;
            ++found;
            const Point2 a = ev_one.eval(z), b = ev_half.eval(z);
            scale = std::max({scale, std::abs(a.x), std::abs(a.y)});
            dev = std::max({dev, std::abs(a.x - b.x), std::abs(a.y - b.y)});
        }
    }
    out.newton_checked = found > 0;
    out.newton_max_rel_dev = found > 0 ? dev / std::max(scale, 1e-300) : 0.0;
    return out;
}

} // namespace hyperlab
