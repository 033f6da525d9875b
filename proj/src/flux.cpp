#include <algorithm>
#include <cmath>

#include "hyperlab/kernels.hpp"
#include "hyperlab/transport.hpp"

namespace hyperlab {

namespace {

// Deposit the face crossings of one straight parcel path (x0,y0) -> (x0+dx,y0+dy)
// into mass-flux accumulators. FX[i*n+j] is the flux through the x-face at
// x = i*h, y in [j*h,(j+1)*h); FY[i*n+j] through the y-face at y = j*h.
void deposit_segment(std::vector<double>& FX, std::vector<double>& FY, int n, double h, double L,
                     double x0, double y0, double dx, double dy, double mass) {
    if (dx != 0.0) {
        const double xa = std::min(x0, x0 + dx), xb = std::max(x0, x0 + dx);
        const int k0 = int(std::ceil(xa / h)), k1 = int(std::floor(xb / h));
        const double s = dx > 0.0 ? mass : -mass;
        for (int k = k0; k <= k1; ++k) {
            const double t = (k * h - x0) / dx;
            if (t < 0.0 || t > 1.0) continue;
            double yc = std::fmod(y0 + t * dy, L);
            if (yc < 0.0) yc += L;
            int kw = k % n;
            if (kw < 0) kw += n;
            const int j = std::min(n - 1, int(yc / h));
            FX[std::size_t(kw) * n + std::size_t(j)] += s;
        }
    }
    if (dy != 0.0) {
        const double ya = std::min(y0, y0 + dy), yb = std::max(y0, y0 + dy);
        const int k0 = int(std::ceil(ya / h)), k1 = int(std::floor(yb / h));
        const double s = dy > 0.0 ? mass : -mass;
        for (int k = k0; k <= k1; ++k) {
            const double t = (k * h - y0) / dy;
            if (t < 0.0 || t > 1.0) continue;
            double xc = std::fmod(x0 + t * dx, L);
            if (xc < 0.0) xc += L;
            int kw = k % n;
            if (kw < 0) kw += n;
            const int i = std::min(n - 1, int(xc / h));
            FY[std::size_t(i) * n + std::size_t(kw)] += s;
        }
    }
}

int wrap_cell(double a, double h, int n, double L) {
    double w = std::fmod(a, L);
    if (w < 0.0) w += L;
    return std::min(n - 1, int(w / h));
}

} // namespace

FluxResult field_from_coupling(const TransportResult& result, const PointConfiguration& cfg,
                               int grid_n, double dest_spread) {
    if (!result.coupling) throw MissingCoupling("field_from_coupling: result carries no coupling");
    const double L = cfg.box.L;
    const int n = grid_n;
    const double h = L / n;
    const int gm = result.grid_m;
    const double hc = L / gm;
    if (!(dest_spread > 0.0)) throw DensityUnbounded("field_from_coupling: dest_spread must be > 0");

    // sub-tile source cells so sub-parcel spacing <= h/2
    const int sub = std::max(1, int(std::ceil(2.0 * hc / h)));
    const double scale = dest_spread / hc; // source tile -> destination square

    std::vector<double> FX(std::size_t(n) * n, 0.0), FY(std::size_t(n) * n, 0.0);
    std::vector<double> src_mass(std::size_t(n) * n, 0.0), dest_mass(std::size_t(n) * n, 0.0);

    for (const auto& e : *result.coupling) {
        const double cx = (double(e.cell / std::uint32_t(gm)) + 0.5) * hc;
        const double cy = (double(e.cell % std::uint32_t(gm)) + 0.5) * hc;
        const double ddx = cfg.box.delta(cfg.pos[e.point].x, cx);
        const double ddy = cfg.box.delta(cfg.pos[e.point].y, cy);
        const double m = e.mass / (sub * sub);
        for (int ui = 0; ui < sub; ++ui) {
            for (int vi = 0; vi < sub; ++vi) {
                const double ox = ((ui + 0.5) / sub - 0.5) * hc;
                const double oy = ((vi + 0.5) / sub - 0.5) * hc;
                const double sx = cx + ox, sy = cy + oy;
                // parcel travels to the destination square around the atom,
                // keeping its relative offset (scaled); cost unchanged at scale=1
                const double tx = ddx + ox * (scale - 1.0);
                const double ty = ddy + oy * (scale - 1.0);
                double sxw = std::fmod(sx, L);
                if (sxw < 0.0) sxw += L;
                double syw = std::fmod(sy, L);
                if (syw < 0.0) syw += L;
                deposit_segment(FX, FY, n, h, L, sxw, syw, tx, ty, m);
                src_mass[std::size_t(wrap_cell(sxw, h, n, L)) * n +
                         std::size_t(wrap_cell(syw, h, n, L))] += m;
                dest_mass[std::size_t(wrap_cell(sxw + tx, h, n, L)) * n +
                          std::size_t(wrap_cell(syw + ty, h, n, L))] += m;
            }
        }
    }

    FluxResult out;
    out.flux = VectorFieldGrid(cfg.box, n);
    for (std::size_t i = 0; i < FX.size(); ++i) {
        out.flux.x[i] = FX[i] / h; // face-average velocity-density samples
        out.flux.y[i] = FY[i] / h;
    }
    // energy = h^2 sum (F/h)^2 = sum F^2
    out.energy = (kernels::sum_squares(FX, FY)) / (L * L);

    // exact bookkeeping identity: net outflow per cell = started - ended mass
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::size_t c = std::size_t(i) * n + std::size_t(j);
            const std::size_t ipp = std::size_t((i + 1) % n) * n + std::size_t(j);
            const std::size_t jpp = std::size_t(i) * n + std::size_t((j + 1) % n);
            const double net = FX[ipp] - FX[c] + FY[jpp] - FY[c];
            worst = std::max(worst, std::abs(net - (src_mass[c] - dest_mass[c])));
        }
    }
    out.div_residual = worst;

    double dmax = 0.0;
    for (double d : dest_mass) dmax = std::max(dmax, d);
    out.rho_bar = std::max(1.0, dmax / (h * h));
    out.rhs = out.rho_bar * result.cost_per_volume;
    out.holds = out.energy <= out.rhs * 1.05;
    return out;
}

} // namespace hyperlab
