#include "hyperlab/grid.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "hyperlab/kernels.hpp"
#include "hyperlab/parallel.hpp"

namespace hyperlab {

double ScalarFieldGrid::integral() const {
    return h() * h() * deterministic_sum(v);
}

double ScalarFieldGrid::max_abs() const {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
}

double VectorFieldGrid::energy() const {
    return h() * h() * kernels::sum_squares(x, y);
}

namespace {
constexpr char kMagic[8] = {'H', 'L', 'G', 'R', 'I', 'D', '1', '\0'};

void write_grid_payload(std::ofstream& f, const ScalarFieldGrid& g) {
    f.write(kMagic, 8);
    const std::uint32_t n = std::uint32_t(g.n);
    f.write(reinterpret_cast<const char*>(&n), 4);
    const double L = g.box.L;
    f.write(reinterpret_cast<const char*>(&L), 8);
    f.write(reinterpret_cast<const char*>(g.v.data()), std::streamsize(g.v.size() * 8));
}
} // namespace

void save_grid(const ScalarFieldGrid& g, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_grid_payload(f, g);
}

ScalarFieldGrid load_grid(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    char magic[8];
    f.read(magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("bad grid magic in " + path);
    std::uint32_t n = 0;
    f.read(reinterpret_cast<char*>(&n), 4);
    double L = 0.0;
    f.read(reinterpret_cast<char*>(&L), 8);
    ScalarFieldGrid g{TorusBox(L), int(n)};
    f.read(reinterpret_cast<char*>(g.v.data()), std::streamsize(g.v.size() * 8));
    if (!f) throw std::runtime_error("truncated grid file " + path);
    return g;
}

void save_vector_grid(const VectorFieldGrid& g, const std::string& path_x,
                      const std::string& path_y) {
    ScalarFieldGrid sx(g.box, g.n), sy(g.box, g.n);
    sx.v = g.x;
    sy.v = g.y;
    save_grid(sx, path_x);
    save_grid(sy, path_y);
}

} // namespace hyperlab
