#include "hyperlab/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hyperlab {
namespace detail {

// Log-domain Sinkhorn with eps-scaling on a sparse candidate-arc list, then
// rounding to the transport polytope: row scaling, column scaling, and a
// greedy completion of the residual marginals (exact marginals, admissible
// coupling, hence an upper bound on the optimal cost).
SinkhornOut sinkhorn_sparse(const std::vector<double>& supply, const std::vector<double>& demand,
                            const std::vector<std::uint32_t>& tail,
                            const std::vector<std::uint32_t>& head, const std::vector<double>& cost,
                            double eps) {
    const std::size_t ns = supply.size(), nt = demand.size(), na = cost.size();

    // arc ordering by source (input is built source-major) and by sink
    std::vector<std::size_t> sstart(ns + 1, 0);
    for (std::size_t e = 0; e < na; ++e) sstart[tail[e] + 1]++;
    for (std::size_t i = 0; i < ns; ++i) sstart[i + 1] += sstart[i];

    std::vector<std::uint32_t> by_head(na);
    std::vector<std::size_t> tstart(nt + 1, 0);
    for (std::size_t e = 0; e < na; ++e) tstart[head[e] + 1]++;
    for (std::size_t j = 0; j < nt; ++j) tstart[j + 1] += tstart[j];
    {
        std::vector<std::size_t> fill(tstart.begin(), tstart.end() - 1);
        for (std::size_t e = 0; e < na; ++e) by_head[fill[head[e]]++] = std::uint32_t(e);
    }

    std::vector<double> u(ns, 0.0), v(nt, 0.0);
    std::vector<double> la(ns), lb(nt);
    for (std::size_t i = 0; i < ns; ++i) la[i] = std::log(supply[i]);
    for (std::size_t j = 0; j < nt; ++j) lb[j] = std::log(demand[j]);

    double cmax = 0.0;
    for (double c : cost) cmax = std::max(cmax, c);
    std::vector<double> schedule;
    for (double e = std::max(eps, 0.125 * (cmax + 1e-12)); e > eps * 1.5; e *= 0.5)
        schedule.push_back(e);
    schedule.push_back(eps);

    const double total_mass = [&] {
        double s = 0.0;
        for (double x : supply) s += x;
        return s;
    }();

    int iters = 0;
    std::vector<double> z(na);
    for (std::size_t lvl = 0; lvl < schedule.size(); ++lvl) {
        const double e = schedule[lvl];
        const int cap = (lvl + 1 == schedule.size()) ? 4000 : 200;
        for (int it = 0; it < cap; ++it) {
            ++iters;
            for (std::size_t a = 0; a < na; ++a) z[a] = (v[head[a]] - cost[a]) / e;
            for (std::size_t i = 0; i < ns; ++i) {
                double mx = -1e300;
                for (std::size_t a = sstart[i]; a < sstart[i + 1]; ++a) mx = std::max(mx, z[a]);
                double s = 0.0;
                for (std::size_t a = sstart[i]; a < sstart[i + 1]; ++a) s += std::exp(z[a] - mx);
                u[i] = e * (la[i] - mx - std::log(s));
            }
            double dv = 0.0;
            for (std::size_t a = 0; a < na; ++a) z[a] = (u[tail[a]] - cost[a]) / e;
            for (std::size_t j = 0; j < nt; ++j) {
                double mx = -1e300;
                for (std::size_t k = tstart[j]; k < tstart[j + 1]; ++k)
                    mx = std::max(mx, z[by_head[k]]);
                double s = 0.0;
                for (std::size_t k = tstart[j]; k < tstart[j + 1]; ++k)
                    s += std::exp(z[by_head[k]] - mx);
                const double vn = e * (lb[j] - mx - std::log(s));
                dv = std::max(dv, std::abs(vn - v[j]));
                v[j] = vn;
            }
            if (dv < 1e-10 * (1.0 + cmax) && it > 2) break;
        }
    }

    SinkhornOut out;
    out.iterations = iters;
    out.flow.resize(na);
    for (std::size_t a = 0; a < na; ++a)
        out.flow[a] = std::exp((u[tail[a]] + v[head[a]] - cost[a]) / eps);

    // rounding: rows down to supply, columns down to demand, then greedy completion
    std::vector<double> rowsum(ns, 0.0), colsum(nt, 0.0);
    for (std::size_t a = 0; a < na; ++a) rowsum[tail[a]] += out.flow[a];
    for (std::size_t i = 0; i < ns; ++i)
        if (rowsum[i] > supply[i]) {
            const double f = supply[i] / rowsum[i];
            for (std::size_t a = sstart[i]; a < sstart[i + 1]; ++a) out.flow[a] *= f;
        }
    for (std::size_t a = 0; a < na; ++a) colsum[head[a]] += out.flow[a];
    for (std::size_t j = 0; j < nt; ++j)
        if (colsum[j] > demand[j]) {
            const double f = demand[j] / colsum[j];
            for (std::size_t k = tstart[j]; k < tstart[j + 1]; ++k) out.flow[by_head[k]] *= f;
        }
    std::vector<double> ra(ns, 0.0), rb(nt, 0.0);
    std::fill(rowsum.begin(), rowsum.end(), 0.0);
    for (std::size_t a = 0; a < na; ++a) rowsum[tail[a]] += out.flow[a];
    for (std::size_t i = 0; i < ns; ++i) ra[i] = std::max(0.0, supply[i] - rowsum[i]);
    std::fill(colsum.begin(), colsum.end(), 0.0);
    for (std::size_t a = 0; a < na; ++a) colsum[head[a]] += out.flow[a];
    for (std::size_t j = 0; j < nt; ++j) rb[j] = std::max(0.0, demand[j] - colsum[j]);

    double resid = 0.0;
    for (double x : ra) resid += x;
    out.marginal_residual = resid / total_mass;
    // two-pointer completion (at most ns + nt entries)
    std::size_t i = 0, j = 0;
    while (i < ns && j < nt) {
        if (ra[i] <= 1e-15 * total_mass) { ++i; continue; }
        if (rb[j] <= 1e-15 * total_mass) { ++j; continue; }
        const double m = std::min(ra[i], rb[j]);
        out.extra_tail.push_back(std::uint32_t(i));
        out.extra_head.push_back(std::uint32_t(j));
        out.extra_mass.push_back(m);
        ra[i] -= m;
        rb[j] -= m;
    }
    return out;
}

} // namespace detail
} // namespace hyperlab
