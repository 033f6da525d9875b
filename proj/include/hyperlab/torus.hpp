#pragma once
#include <cassert>
#include <cmath>
#include <cstdint>

namespace hyperlab {

struct Point2 {
    double x = 0.0, y = 0.0;
};

// Periodic square box [0,L)^2. Field and exact-count operations additionally
// require L to be a positive integer so that the unit-intensity point target
// L^2 is an integer.
struct TorusBox {
    double L = 1.0;

    explicit TorusBox(double side) : L(side) { assert(L > 0.0); }
    TorusBox() = default;

    double area() const { return L * L; }

    bool integer_side() const {
        return L > 0.0 && std::floor(L) == L;
    }

    // wrap a coordinate into [0,L)
    double wrap(double a) const {
        double r = std::fmod(a, L);
        if (r < 0.0) r += L;
        if (r >= L) r = 0.0; // fmod can return L after rounding
        return r;
    }
    Point2 wrap(Point2 p) const { return {wrap(p.x), wrap(p.y)}; }

    // signed minimal-image difference, in (-L/2, L/2]
    double delta(double a, double b) const {
        double d = a - b;
        d -= L * std::round(d / L);
        return d;
    }
};

inline double periodic_distance(Point2 a, Point2 b, const TorusBox& box) {
    const double dx = box.delta(a.x, b.x);
    const double dy = box.delta(a.y, b.y);
    return std::sqrt(dx * dx + dy * dy);
}

inline double periodic_dist2(Point2 a, Point2 b, const TorusBox& box) {
    const double dx = box.delta(a.x, b.x);
    const double dy = box.delta(a.y, b.y);
    return dx * dx + dy * dy;
}

} // namespace hyperlab
