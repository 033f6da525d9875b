#include "hyperlab/config.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "hyperlab/rng.hpp"

namespace hyperlab {

std::uint64_t PointConfiguration::content_hash() const {
    std::uint64_t h = detail::mix64(0x243F6A8885A308D3ULL ^ std::uint64_t(atoms()));
    auto fold = [&h](std::uint64_t v) { h = detail::mix64(h ^ v); };
    std::uint64_t bits;
    std::memcpy(&bits, &box.L, 8);
    fold(bits);
    for (std::size_t i = 0; i < pos.size(); ++i) {
        std::memcpy(&bits, &pos[i].x, 8);
        fold(bits);
        std::memcpy(&bits, &pos[i].y, 8);
        fold(bits);
        fold(std::uint64_t(mult[i]));
    }
    return h;
}

PointGrid::PointGrid(const PointConfiguration& cfg, double target_cell)
    : box_(cfg.box), pos_(&cfg.pos), mult_(&cfg.mult) {
    nc_ = std::max(1, int(std::floor(box_.L / std::max(target_cell, 1e-9))));
    nc_ = std::min(nc_, 4096);
    cell_ = box_.L / nc_;
    cells_.assign(std::size_t(nc_) * nc_, {});
    for (std::size_t idx = 0; idx < pos_->size(); ++idx) {
        const auto& p = (*pos_)[idx];
        cells_[std::size_t(cell_index(p.x)) * nc_ + cell_index(p.y)].push_back(std::uint32_t(idx));
    }
}

std::int64_t PointGrid::count_in_ball(Point2 center, double r) const {
    std::int64_t c = 0;
    for_neighbors(center, r, [&](std::uint32_t idx, double) { c += (*mult_)[idx]; });
    return c;
}

std::int64_t count_in_ball(const PointConfiguration& cfg, Point2 center, double r) {
    if (!(r < cfg.box.L / 2.0))
        throw RadiusTooLarge("count_in_ball: r must be < L/2, got r=" + std::to_string(r) +
                             " L=" + std::to_string(cfg.box.L));
    std::int64_t c = 0;
    const double r2 = r * r;
    for (std::size_t i = 0; i < cfg.pos.size(); ++i)
        if (periodic_dist2(cfg.pos[i], center, cfg.box) <= r2) c += cfg.mult[i];
    return c;
}

void save_config(const PointConfiguration& cfg, std::ostream& os) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "L=%.17g count=%" PRId64 "\n", cfg.box.L, cfg.total_count());
    os << buf;
    for (std::size_t i = 0; i < cfg.pos.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", cfg.pos[i].x, cfg.pos[i].y,
                      int(cfg.mult[i]));
        os << buf;
    }
}

void save_config(const PointConfiguration& cfg, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    save_config(cfg, f);
}

PointConfiguration load_config(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("empty configuration file");
    double L = 0.0;
    long long count = 0;
    if (std::sscanf(header.c_str(), "L=%lg count=%lld", &L, &count) != 2)
        throw std::runtime_error("bad configuration header: " + header);
    PointConfiguration cfg;
    cfg.box = TorusBox(L);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double x, y;
        int m;
        if (std::sscanf(line.c_str(), "%lg %lg %d", &x, &y, &m) != 3)
            throw std::runtime_error("bad configuration row: " + line);
        cfg.push({x, y}, m);
    }
    if (cfg.total_count() != count)
        throw std::runtime_error("configuration count mismatch with header");
    return cfg;
}

PointConfiguration load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return load_config(f);
}

} // namespace hyperlab
