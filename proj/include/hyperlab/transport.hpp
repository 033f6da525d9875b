#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/config.hpp"
#include "hyperlab/coulomb.hpp"
#include "hyperlab/generators.hpp"
#include "hyperlab/grid.hpp"

namespace hyperlab {

struct CouplingEntry {
    std::uint32_t point = 0; // atom index
    std::uint32_t cell = 0;  // cell index i*grid_m + j
    double mass = 0.0;
};

struct TransportResult {
    double cost_per_volume = 0.0; // length^2 units for p=2, length for p=1
    int p = 2;
    enum class Method { ExactAssignment, Entropic } method = Method::ExactAssignment;
    double epsilon = 0.0;     // entropic regularization (0 for exact)
    int grid_m = 0;
    double half_cell_diameter = 0.0; // discretization bound reported alongside the cost
    std::optional<std::vector<CouplingEntry>> coupling;
};

std::string to_string(TransportResult::Method m);

// Transportation problem solvers on the bipartite point/cell graph with
// periodic ground metric. Exact = network simplex with candidate-arc pruning
// and a full dual-feasibility pricing pass (re-solves with added arcs until
// the optimality certificate holds). Entropic = log-domain Sinkhorn with
// eps-scaling, rounded to exact marginals (an admissible coupling, hence an
// upper bound).
struct SolverLimits {
    static constexpr std::int64_t kExactMax = 10'000'000; // count * grid_m^2 cap for exact
};

TransportResult w2_to_lebesgue(const PointConfiguration& cfg, int grid_m,
                               TransportResult::Method method, double epsilon = 0.0,
                               bool keep_coupling = false);
TransportResult w1_to_lebesgue(const PointConfiguration& cfg, int grid_m,
                               TransportResult::Method method, double epsilon = 0.0,
                               bool keep_coupling = false);

// Per-volume costs across increasing boxes with a stability verdict:
// "finite" when the last two sizes differ by < 10% relative, else "growing".
struct WpSequence {
    std::vector<double> boxes;
    std::vector<double> cost_per_volume;
    std::vector<double> stderr_;
    bool finite = false;
    double growth_slope = 0.0; // fitted slope of cost vs log L
};
WpSequence wp_per_unit_volume(const ProcessSpec& spec, const std::vector<double>& boxes, int p,
                              int replicas, RngSeed seed, int grid_m_per_unit = 2,
                              TransportResult::Method method = TransportResult::Method::ExactAssignment,
                              double epsilon = 0.0);

struct TransportBound {
    double bound = 0.0;    // (4/c_d^2) * energy_per_volume + eta^2 * density
    double measured = 0.0; // w2_to_lebesgue cost per volume
    bool holds = false;    // measured <= bound * 1.05
};
TransportBound transport_bound_from_field(const TruncatedField& field,
                                          const PointConfiguration& cfg, int grid_m);

struct FluxResult {
    VectorFieldGrid flux;     // staggered face values: x[i,j] flux density across x-face at (i h, (j+1/2) h)
    double energy = 0.0;      // per volume
    double rhs = 0.0;         // rho_bar * W2^2 per volume
    bool holds = false;       // energy <= rhs * 1.05
    double rho_bar = 0.0;     // max(1, max transported density)
    double div_residual = 0.0; // max cell |div flux - (source - dest)| (face bookkeeping, ~0)
};

// Time-integrated momentum field of the displacement interpolation carried by
// a coupling: each mass parcel moves at constant velocity along its periodic
// geodesic and deposits signed mass on every grid face it crosses. Source
// cells are tiled into sub-parcels and the destination atom is spread over a
// square of side dest_spread (translated tiling keeps the coupling cost).
FluxResult field_from_coupling(const TransportResult& result, const PointConfiguration& cfg,
                               int grid_n, double dest_spread = 0.5);

// marginal residuals of a coupling: (max point-side, max cell-side), relative
std::pair<double, double> coupling_marginal_residuals(const TransportResult& result,
                                                      const PointConfiguration& cfg);

} // namespace hyperlab
