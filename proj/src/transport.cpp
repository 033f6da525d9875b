#include "hyperlab/transport.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hyperlab/parallel.hpp"
#include "hyperlab/simplex.hpp"
#include "hyperlab/sinkhorn.hpp"

namespace hyperlab {

std::string to_string(TransportResult::Method m) {
    return m == TransportResult::Method::ExactAssignment ? "exact_assignment" : "entropic";
}

namespace {

struct Candidates {
    std::vector<std::uint32_t> tail, head;
    std::vector<double> cost; // |x - cell|^p with periodic metric
};

double cell_coord(int idx, double hc) { return (idx + 0.5) * hc; }

// candidate cells for every atom within radius R (periodic), source-major order
Candidates build_candidates(const PointConfiguration& cfg, int grid_m, double R, int p) {
    const double L = cfg.box.L;
    const double hc = L / grid_m;
    Candidates out;
    for (std::size_t a = 0; a < cfg.atoms(); ++a) {
        const double px = cfg.pos[a].x, py = cfg.pos[a].y;
        const int i0 = int(std::floor((px - R) / hc)), i1 = int(std::floor((px + R) / hc));
        const int j0 = int(std::floor((py - R) / hc)), j1 = int(std::floor((py + R) / hc));
        const std::size_t before = out.cost.size();
        for (int i = i0; i <= i1; ++i) {
            int iw = i % grid_m;
            if (iw < 0) iw += grid_m;
            const double dx = cfg.box.delta(cell_coord(iw, hc), px);
            for (int j = j0; j <= j1; ++j) {
                int jw = j % grid_m;
                if (jw < 0) jw += grid_m;
                const double dy = cfg.box.delta(cell_coord(jw, hc), py);
                const double d2 = dx * dx + dy * dy;
                if (d2 > R * R) continue;
                out.tail.push_back(std::uint32_t(a));
                out.head.push_back(std::uint32_t(iw * grid_m + jw));
                out.cost.push_back(p == 2 ? d2 : std::sqrt(d2));
            }
        }
        if (out.cost.size() == before) {
            // degenerate radius: connect at least the nearest containing cell
            int iw = int(std::floor(px / hc)) % grid_m;
            int jw = int(std::floor(py / hc)) % grid_m;
            const double dx = cfg.box.delta(cell_coord(iw, hc), px);
            const double dy = cfg.box.delta(cell_coord(jw, hc), py);
            out.tail.push_back(std::uint32_t(a));
            out.head.push_back(std::uint32_t(iw * grid_m + jw));
            const double d2 = dx * dx + dy * dy;
            out.cost.push_back(p == 2 ? d2 : std::sqrt(d2));
        }
    }
    return out;
}

double arc_cost(const PointConfiguration& cfg, int grid_m, std::uint32_t atom, std::uint32_t cell,
                int p) {
    const double hc = cfg.box.L / grid_m;
    const double cx = cell_coord(int(cell) / grid_m, hc);
    const double cy = cell_coord(int(cell) % grid_m, hc);
    const double d2 = periodic_dist2(cfg.pos[atom], {cx, cy}, cfg.box);
    return p == 2 ? d2 : std::sqrt(d2);
}

TransportResult solve_ot(const PointConfiguration& cfg, int grid_m,
                         TransportResult::Method method, double epsilon, bool keep_coupling,
                         int p, double radius_hint) {
    const double L = cfg.box.L;
    if (!cfg.box.integer_side())
        throw Unbalanced("transport: box side must be integer for the balanced problem");
    const std::int64_t target = std::int64_t(L) * std::int64_t(L);
    if (cfg.total_count() != target)
        throw Unbalanced("transport: configuration has " + std::to_string(cfg.total_count()) +
                         " points, the balanced problem needs " + std::to_string(target));
    if (grid_m < 2 * int(L)) throw InstanceTooLarge("transport: grid_m must be >= 2L");

    const std::size_t nc = std::size_t(grid_m) * std::size_t(grid_m);
    const double hc = L / grid_m;
    const double cell_mass = hc * hc;

    std::vector<double> supply(cfg.atoms());
    for (std::size_t a = 0; a < cfg.atoms(); ++a) supply[a] = double(cfg.mult[a]);
    std::vector<double> demand(nc, cell_mass);

    TransportResult res;
    res.p = p;
    res.method = method;
    res.epsilon = method == TransportResult::Method::Entropic ? epsilon : 0.0;
    res.grid_m = grid_m;
    res.half_cell_diameter = hc * M_SQRT1_2;

    double total_cost = 0.0;
    std::vector<CouplingEntry> coupling;

    if (method == TransportResult::Method::ExactAssignment) {
        if (double(cfg.total_count()) * double(nc) > double(SolverLimits::kExactMax))
            throw InstanceTooLarge("transport: instance exceeds the exact-method size cap");
        double R = radius_hint > 0.0 ? radius_hint : std::max(3.0 * hc, 2.5);
        for (int round = 0;; ++round) {
            Candidates cand = build_candidates(cfg, grid_m, R, p);
            TransportationProblem prob;
            prob.supply = supply;
            prob.demand = demand;
            prob.tail = std::move(cand.tail);
            prob.head = std::move(cand.head);
            prob.cost = std::move(cand.cost);
            TransportationSolution sol = solve_transportation(prob);
            if (!sol.feasible) {
                R *= 2.0;
                if (round > 12) throw std::runtime_error("transport: no feasible candidate set");
                continue;
            }
            // full pricing pass: the optimality certificate over pruned arcs
            double worst = 0.0;
            std::vector<std::array<std::uint32_t, 2>> violated;
            const double tol = 1e-9 * (1.0 + L * L);
            for (std::size_t a = 0; a < cfg.atoms(); ++a) {
                for (std::size_t c = 0; c < nc; ++c) {
                    const double rc = arc_cost(cfg, grid_m, std::uint32_t(a), std::uint32_t(c), p) -
                                      sol.pi_source[a] + sol.pi_sink[c];
                    if (rc < -tol) {
                        violated.push_back({std::uint32_t(a), std::uint32_t(c)});
                        worst = std::min(worst, rc);
                    }
                }
            }
            if (violated.empty()) {
                total_cost = sol.total_cost;
                if (keep_coupling) {
                    for (std::size_t e = 0; e < sol.flow.size(); ++e)
                        if (sol.flow[e] > 1e-12)
                            coupling.push_back({prob.tail[e], prob.head[e], sol.flow[e]});
                }
                break;
            }
            // widen to cover every violated arc next round
            double needR = R;
            for (const auto& vio : violated) {
                const double c = arc_cost(cfg, grid_m, vio[0], vio[1], p);
                needR = std::max(needR, p == 2 ? std::sqrt(c) : c);
            }
            R = std::max(needR * 1.05, R * 1.3);
            if (round > 12) throw std::runtime_error("transport: pricing failed to converge");
        }
    } else {
        if (!(epsilon > 0.0)) throw std::runtime_error("transport: entropic method needs epsilon > 0");
        const double spread = std::sqrt(40.0 * epsilon);
        const double R = std::max({4.0 * hc, radius_hint + spread, 3.0 + spread});
        Candidates cand = build_candidates(cfg, grid_m, R, p);
        auto out = detail::sinkhorn_sparse(supply, demand, cand.tail, cand.head, cand.cost, epsilon);
        std::vector<double> terms(out.flow.size());
        for (std::size_t e = 0; e < out.flow.size(); ++e) terms[e] = out.flow[e] * cand.cost[e];
        total_cost = deterministic_sum(terms);
        for (std::size_t e = 0; e < out.extra_mass.size(); ++e)
            total_cost += out.extra_mass[e] *
                          arc_cost(cfg, grid_m, out.extra_tail[e], out.extra_head[e], p);
        if (keep_coupling) {
            for (std::size_t e = 0; e < out.flow.size(); ++e)
                if (out.flow[e] > 1e-14)
                    coupling.push_back({cand.tail[e], cand.head[e], out.flow[e]});
            for (std::size_t e = 0; e < out.extra_mass.size(); ++e)
                coupling.push_back({out.extra_tail[e], out.extra_head[e], out.extra_mass[e]});
        }
    }

    res.cost_per_volume = total_cost / (L * L);
    if (keep_coupling) res.coupling = std::move(coupling);
    return res;
}

} // namespace

TransportResult w2_to_lebesgue(const PointConfiguration& cfg, int grid_m,
                               TransportResult::Method method, double epsilon,
                               bool keep_coupling) {
    return solve_ot(cfg, grid_m, method, epsilon, keep_coupling, 2, 0.0);
}

TransportResult w1_to_lebesgue(const PointConfiguration& cfg, int grid_m,
                               TransportResult::Method method, double epsilon,
                               bool keep_coupling) {
    return solve_ot(cfg, grid_m, method, epsilon, keep_coupling, 1, 0.0);
}

WpSequence wp_per_unit_volume(const ProcessSpec& spec, const std::vector<double>& boxes, int p,
                              int replicas, RngSeed seed, int grid_m_per_unit,
                              TransportResult::Method method, double epsilon) {
    WpSequence out;
    out.boxes = boxes;
    std::vector<double> logL;
    for (std::size_t bi = 0; bi < boxes.size(); ++bi) {
        const TorusBox box(boxes[bi]);
        std::vector<double> costs(std::size_t(replicas), 0.0);
        for (int rep = 0; rep < replicas; ++rep) {
            const RngSeed rs{seed.seed, seed.stream + std::uint64_t(bi) * 1000 + std::uint64_t(rep)};
            PointConfiguration cfg = sample(spec, box, rs);
            if (!exact_count(spec)) cfg = condition_point_count(cfg, rs);
            const int grid_m = grid_m_per_unit * int(box.L);
            const TransportResult r = p == 2 ? w2_to_lebesgue(cfg, grid_m, method, epsilon)
                                             : w1_to_lebesgue(cfg, grid_m, method, epsilon);
            costs[std::size_t(rep)] = r.cost_per_volume;
        }
        const double mean = deterministic_sum(costs) / replicas;
        double ss = 0.0;
        for (double c : costs) ss += (c - mean) * (c - mean);
        out.cost_per_volume.push_back(mean);
        out.stderr_.push_back(replicas > 1 ? std::sqrt(ss / (replicas - 1) / replicas) : 0.0);
        logL.push_back(std::log(boxes[bi]));
    }
    const std::size_t n = boxes.size();
    if (n >= 2) {
        const double rel = std::abs(out.cost_per_volume[n - 1] - out.cost_per_volume[n - 2]) /
                           std::max(1e-300, std::abs(out.cost_per_volume[n - 2]));
        out.finite = rel < 0.10;
        // least-squares slope of cost vs log L
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += logL[i];
            my += out.cost_per_volume[i];
        }
        mx /= double(n);
        my /= double(n);
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxy += (logL[i] - mx) * (out.cost_per_volume[i] - my);
            sxx += (logL[i] - mx) * (logL[i] - mx);
        }
        out.growth_slope = sxx > 0.0 ? sxy / sxx : 0.0;
    }
    return out;
}

TransportBound transport_bound_from_field(const TruncatedField& field,
                                          const PointConfiguration& cfg, int grid_m) {
    TransportBound out;
    const double L = cfg.box.L;
    const double density = double(cfg.total_count()) / (L * L);
    out.bound = (4.0 / (field.c_d * field.c_d)) * field.energy_per_volume() +
                field.eta * field.eta * density;
    const double sz = double(cfg.total_count()) * double(grid_m) * double(grid_m);
    const auto method = sz <= double(SolverLimits::kExactMax)
                            ? TransportResult::Method::ExactAssignment
                            : TransportResult::Method::Entropic;
    const TransportResult r = w2_to_lebesgue(cfg, grid_m, method, 0.05);
    out.measured = r.cost_per_volume;
    out.holds = out.measured <= out.bound * 1.05;
    return out;
}

std::pair<double, double> coupling_marginal_residuals(const TransportResult& result,
                                                      const PointConfiguration& cfg) {
    if (!result.coupling) throw MissingCoupling("coupling_marginal_residuals: no coupling stored");
    const int gm = result.grid_m;
    const double cell_mass = (cfg.box.L / gm) * (cfg.box.L / gm);
    std::vector<double> row(cfg.atoms(), 0.0), col(std::size_t(gm) * gm, 0.0);
    for (const auto& e : *result.coupling) {
        row[e.point] += e.mass;
        col[e.cell] += e.mass;
    }
    double rp = 0.0, rc = 0.0;
    for (std::size_t a = 0; a < cfg.atoms(); ++a)
        rp = std::max(rp, std::abs(row[a] - double(cfg.mult[a])) / double(cfg.mult[a]));
    for (std::size_t c = 0; c < col.size(); ++c)
        rc = std::max(rc, std::abs(col[c] - cell_mass) / cell_mass);
    return {rp, rc};
}

} // namespace hyperlab
