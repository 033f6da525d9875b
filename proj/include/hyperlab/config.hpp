#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyperlab/errors.hpp"
#include "hyperlab/torus.hpp"

namespace hyperlab {

// Finite multiset of positions on the torus. Multiplicities are explicit so
// that N^2 coincident points (collapse blocks) are represented exactly.
struct PointConfiguration {
    TorusBox box;
    std::vector<Point2> pos;
    std::vector<std::int32_t> mult;

    std::int64_t total_count() const {
        std::int64_t c = 0;
        for (auto m : mult) c += m;
        return c;
    }
    std::size_t atoms() const { return pos.size(); }

    void push(Point2 p, std::int32_t m = 1) {
        pos.push_back(box.wrap(p));
        mult.push_back(m);
    }

    PointConfiguration shifted(Point2 t) const {
        PointConfiguration out;
        out.box = box;
        out.pos.reserve(pos.size());
        out.mult = mult;
        for (auto p : pos) out.pos.push_back(box.wrap({p.x + t.x, p.y + t.y}));
        return out;
    }

    std::uint64_t content_hash() const;
};

// Cell-list accelerator for disk queries on the torus.
class PointGrid {
  public:
    PointGrid(const PointConfiguration& cfg, double target_cell = 1.0);

    // sum of multiplicities at periodic distance <= r from center
    std::int64_t count_in_ball(Point2 center, double r) const;

    // invoke fn(atom index, squared distance) for atoms within distance r
    template <class F>
    void for_neighbors(Point2 center, double r, F&& fn) const {
        const double r2 = r * r;
        const int span = int(std::ceil(r / cell_)) ;
        const int ci = cell_index(center.x);
        const int cj = cell_index(center.y);
        for (int di = -span; di <= span; ++di) {
            for (int dj = -span; dj <= span; ++dj) {
                const int ii = mod(ci + di), jj = mod(cj + dj);
                const auto& bucket = cells_[std::size_t(ii) * nc_ + jj];
                for (auto idx : bucket) {
                    const double d2 = periodic_dist2((*pos_)[idx], center, box_);
                    if (d2 <= r2) fn(idx, d2);
                }
            }
        }
    }

    const TorusBox& box() const { return box_; }

  private:
    int cell_index(double a) const {
        int i = int(std::floor(a / cell_));
        return mod(i);
    }
    int mod(int i) const {
        i %= nc_;
        return i < 0 ? i + nc_ : i;
    }

    TorusBox box_;
    const std::vector<Point2>* pos_;
    const std::vector<std::int32_t>* mult_;
    double cell_;
    int nc_;
    std::vector<std::vector<std::uint32_t>> cells_;
};

// count with precondition r < L/2 (a larger ball does not embed in the torus)
std::int64_t count_in_ball(const PointConfiguration& cfg, Point2 center, double r);

// line-oriented text format: "L=<float> count=<int>" header then "x y mult" rows
void save_config(const PointConfiguration& cfg, std::ostream& os);
void save_config(const PointConfiguration& cfg, const std::string& path);
PointConfiguration load_config(std::istream& is);
PointConfiguration load_config(const std::string& path);

} // namespace hyperlab
