#pragma once

namespace hyperlab {

// Bessel J1. Midpoint rule on the Bessel integral (spectrally accurate for
// this integrand) below 600, Hankel asymptotic series above; absolute error
// <= 1e-12 over the whole range (validated against high-precision references).
double bessel_j1(double x);

} // namespace hyperlab
