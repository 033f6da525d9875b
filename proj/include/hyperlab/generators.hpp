#pragma once
#include <memory>
#include <string>
#include <vector>

#include "hyperlab/config.hpp"
#include "hyperlab/rng.hpp"

namespace hyperlab {

struct DisplacementLaw {
    enum class Kind { Zero, IsotropicGaussian, RadialPowerTail };
    Kind kind = Kind::Zero;
    double sigma = 0.0;   // gaussian std
    double alpha = 0.0;   // power-tail exponent (density ~ (1+|v|/scale)^-(2+alpha))
    double scale = 1.0;

    static DisplacementLaw zero() { return {}; }
    static DisplacementLaw gaussian(double s) { return {Kind::IsotropicGaussian, s, 0.0, 1.0}; }
    static DisplacementLaw power_tail(double a, double sc = 1.0) {
        return {Kind::RadialPowerTail, 0.0, a, sc};
    }
};

struct ProcessSpec {
    enum class Kind { Poisson, StationaryLattice, PerturbedLattice, CollapseBlocks, BinomialBlocks, Mixture };
    Kind kind = Kind::Poisson;
    double intensity = 1.0;       // poisson
    DisplacementLaw law;          // perturbed lattice
    int block = 0;                // N for block processes
    double jitter = 0.0;          // optional collapse jitter radius (0 = non-simple)
    std::vector<double> weights;  // mixture
    std::vector<ProcessSpec> components;

    static ProcessSpec poisson(double intensity = 1.0);
    static ProcessSpec lattice();
    static ProcessSpec perturbed(DisplacementLaw law);
    static ProcessSpec collapse(int N, double jitter = 0.0);
    static ProcessSpec binomial(int N);
    static ProcessSpec mixture(std::vector<double> w, std::vector<ProcessSpec> comps);

    std::string name() const;
};

// JSON schema: {"kind":"poisson","intensity":1.0} | {"kind":"lattice"} |
// {"kind":"perturbed","law":{"kind":"zero"|"gaussian","sigma":..|"power","alpha":..,"scale":..}} |
// {"kind":"collapse","N":4,"jitter":0.0} | {"kind":"binomial","N":8} |
// {"kind":"mixture","components":[{"weight":w,"spec":{...}},...]}
ProcessSpec parse_process_spec(const std::string& json_text);
std::string process_spec_to_json(const ProcessSpec& spec);

PointConfiguration gen_poisson(const TorusBox& box, double intensity, RngSeed seed);
PointConfiguration gen_stationary_lattice(const TorusBox& box, RngSeed seed);
PointConfiguration gen_perturbed_lattice(const TorusBox& box, const DisplacementLaw& law, RngSeed seed);
PointConfiguration gen_collapse_blocks(const TorusBox& box, int N, RngSeed seed, double jitter = 0.0);
PointConfiguration gen_binomial_blocks(const TorusBox& box, int N, RngSeed seed);
PointConfiguration gen_mixture(const std::vector<double>& weights,
                               const std::vector<ProcessSpec>& components, const TorusBox& box,
                               RngSeed seed);

// dispatch on spec
PointConfiguration sample(const ProcessSpec& spec, const TorusBox& box, RngSeed seed);

// true when the sampler produces exactly L^2 points deterministically
bool exact_count(const ProcessSpec& spec);

} // namespace hyperlab
