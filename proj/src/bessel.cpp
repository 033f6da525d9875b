#include "hyperlab/bessel.hpp"

#include <cmath>

namespace hyperlab {

namespace {

// midpoint rule on J1(x) = (1/pi) int_0^pi cos(theta - x sin theta) dtheta;
// the integrand extends to a periodic analytic function, so the rule converges
// geometrically once the node count exceeds ~x.
double j1_integral(double x, int m) {
    const double h = M_PI / m;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
        const double th = (i + 0.5) * h;
        s += std::cos(th - x * std::sin(th));
    }
    return s / m;
}

// Hankel expansion for large argument
double j1_asymptotic(double x) {
    const double mu = 4.0; // 4 nu^2, nu = 1
    double p = 1.0, q = (mu - 1.0) / (8.0 * x);
    double pterm = 1.0, qterm = q;
    const double z = 8.0 * x;
    for (int k = 1; k <= 10; ++k) {
        const double f1 = mu - double(4 * k - 3) * double(4 * k - 3);
        const double f2 = mu - double(4 * k - 1) * double(4 * k - 1);
        pterm *= -f1 * f2 / (double(2 * k - 1) * double(2 * k) * z * z);
        p += pterm;
        const double g1 = mu - double(4 * k - 1) * double(4 * k - 1);
        const double g2 = mu - double(4 * k + 1) * double(4 * k + 1);
        qterm *= -g1 * g2 / (double(2 * k) * double(2 * k + 1) * z * z);
        q += qterm;
        if (std::abs(pterm) < 1e-17 && std::abs(qterm) < 1e-17) break;
    }
    const double chi = x - 0.75 * M_PI;
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace

double bessel_j1(double x) {
    if (x < 0.0) return -bessel_j1(-x);
    if (x < 1e-7) return 0.5 * x; // J1 ~ x/2
    if (x <= 600.0) {
        const int m = std::max(96, int(x) + 48);
        return j1_integral(x, m);
    }
    return j1_asymptotic(x);
}

} // namespace hyperlab
