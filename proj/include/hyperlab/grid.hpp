#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hyperlab/torus.hpp"

namespace hyperlab {

// Uniform n x n periodic sample grid, cell-center convention: value (i,j)
// lives at ((i+1/2)h, (j+1/2)h), h = L/n, row-major.
// Quadrature rule used everywhere: integral f ~= h^2 * sum(values).
struct ScalarFieldGrid {
    TorusBox box;
    int n = 0;
    std::vector<double> v;

    ScalarFieldGrid() = default;
    ScalarFieldGrid(TorusBox b, int nn) : box(b), n(nn), v(std::size_t(nn) * nn, 0.0) {}

    double h() const { return box.L / n; }
    double& at(int i, int j) { return v[std::size_t(i) * n + j]; }
    double at(int i, int j) const { return v[std::size_t(i) * n + j]; }

    double integral() const;   // h^2 * sum
    double max_abs() const;
};

struct VectorFieldGrid {
    TorusBox box;
    int n = 0;
    std::vector<double> x, y;

    VectorFieldGrid() = default;
    VectorFieldGrid(TorusBox b, int nn)
        : box(b), n(nn), x(std::size_t(nn) * nn, 0.0), y(std::size_t(nn) * nn, 0.0) {}

    double h() const { return box.L / n; }

    // h^2 * sum |v|^2
    double energy() const;
};

// binary layout: magic "HLGRID1\0", little-endian u32 n, f64 L, row-major f64 values
void save_grid(const ScalarFieldGrid& g, const std::string& path);
ScalarFieldGrid load_grid(const std::string& path);

// vector grids are stored as two scalar planes (suffix _x/_y added by caller)
void save_vector_grid(const VectorFieldGrid& g, const std::string& path_x, const std::string& path_y);

} // namespace hyperlab
