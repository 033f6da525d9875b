#include "hyperlab/generators.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace hyperlab {

namespace {
// sub-stream purposes shared across related generators, so e.g. the lattice
// shift tau is identical for lattice and perturbed-lattice at equal seeds
enum Purpose : std::uint64_t { kTau = 1, kDisplace = 2, kCount = 3, kPositions = 4, kMixture = 5, kJitter = 6 };

void require_integer_side(const TorusBox& box, const char* who) {
    if (!box.integer_side())
        throw NonIntegerSide(std::string(who) + ": box side must be a positive integer, got " +
                             std::to_string(box.L));
}

// inverse-CDF sample of the radial power-tail law: radial density ~ s(1+s/scale)^-(2+alpha)
double sample_power_radius(double alpha, double scale, CounterRng& rng) {
    // F(t) over u = 1 + t/scale: primitive of (u-1) u^-(2+alpha) is
    // u^(-alpha)/(-alpha) - u^(-1-alpha)/(-1-alpha)
    const double a = alpha;
    auto prim = [a](double u) { return -std::pow(u, -a) / a + std::pow(u, -1.0 - a) / (1.0 + a); };
    const double lo = prim(1.0);
    const double total = -lo; // prim(inf) = 0
    const double target = lo + rng.uniform01() * total;
    // monotone bisection on u in [1, big)
    double ulo = 1.0, uhi = 2.0;
    while (prim(uhi) < target) uhi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (ulo + uhi);
        (prim(mid) < target ? ulo : uhi) = mid;
    }
    return scale * (0.5 * (ulo + uhi) - 1.0);
}
} // namespace

ProcessSpec ProcessSpec::poisson(double intensity) {
    ProcessSpec s;
    s.kind = Kind::Poisson;
    s.intensity = intensity;
    return s;
}
ProcessSpec ProcessSpec::lattice() {
    ProcessSpec s;
    s.kind = Kind::StationaryLattice;
    return s;
}
ProcessSpec ProcessSpec::perturbed(DisplacementLaw law) {
    ProcessSpec s;
    s.kind = Kind::PerturbedLattice;
    s.law = law;
    return s;
}
ProcessSpec ProcessSpec::collapse(int N, double jitter) {
    ProcessSpec s;
    s.kind = Kind::CollapseBlocks;
    s.block = N;
    s.jitter = jitter;
    return s;
}
ProcessSpec ProcessSpec::binomial(int N) {
    ProcessSpec s;
    s.kind = Kind::BinomialBlocks;
    s.block = N;
    return s;
}
ProcessSpec ProcessSpec::mixture(std::vector<double> w, std::vector<ProcessSpec> comps) {
    ProcessSpec s;
    s.kind = Kind::Mixture;
    s.weights = std::move(w);
    s.components = std::move(comps);
    return s;
}

std::string ProcessSpec::name() const {
    switch (kind) {
        case Kind::Poisson: return "poisson";
        case Kind::StationaryLattice: return "lattice";
        case Kind::PerturbedLattice:
            switch (law.kind) {
                case DisplacementLaw::Kind::Zero: return "perturbed-zero";
                case DisplacementLaw::Kind::IsotropicGaussian: return "perturbed-gaussian";
                case DisplacementLaw::Kind::RadialPowerTail: return "perturbed-powertail";
            }
            return "perturbed";
        case Kind::CollapseBlocks: return "collapse-" + std::to_string(block);
        case Kind::BinomialBlocks: return "binomial-" + std::to_string(block);
        case Kind::Mixture: return "mixture";
    }
    return "unknown";
}

PointConfiguration gen_poisson(const TorusBox& box, double intensity, RngSeed seed) {
    const double mean = intensity * box.area();
    if (!(mean < 2147483648.0)) throw Overflow("gen_poisson: intensity*L^2 exceeds 2^31");
    CounterRng cnt_rng(substream(seed, kCount));
    CounterRng pos_rng(substream(seed, kPositions));
    const std::uint64_t n = cnt_rng.poisson(mean);
    PointConfiguration cfg;
    cfg.box = box;
    cfg.pos.reserve(n);
    cfg.mult.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i)
        cfg.push({pos_rng.uniform(0.0, box.L), pos_rng.uniform(0.0, box.L)});
    return cfg;
}

PointConfiguration gen_stationary_lattice(const TorusBox& box, RngSeed seed) {
    require_integer_side(box, "gen_stationary_lattice");
    CounterRng rng(substream(seed, kTau));
    const double tx = rng.uniform01(), ty = rng.uniform01();
    const int L = int(box.L);
    PointConfiguration cfg;
    cfg.box = box;
    cfg.pos.reserve(std::size_t(L) * L);
    cfg.mult.reserve(std::size_t(L) * L);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) cfg.push({i + tx, j + ty});
    return cfg;
}

PointConfiguration gen_perturbed_lattice(const TorusBox& box, const DisplacementLaw& law,
                                         RngSeed seed) {
    PointConfiguration cfg = gen_stationary_lattice(box, seed);
    if (law.kind == DisplacementLaw::Kind::Zero) return cfg;
    CounterRng rng(substream(seed, kDisplace));
    for (auto& p : cfg.pos) {
        double dx = 0.0, dy = 0.0;
        if (law.kind == DisplacementLaw::Kind::IsotropicGaussian) {
            dx = rng.normal(0.0, law.sigma);
            dy = rng.normal(0.0, law.sigma);
        } else {
            const double r = sample_power_radius(law.alpha, law.scale, rng);
            const double th = rng.uniform(0.0, 2.0 * M_PI);
            dx = r * std::cos(th);
            dy = r * std::sin(th);
        }
        p = box.wrap({p.x + dx, p.y + dy});
    }
    return cfg;
}

PointConfiguration gen_collapse_blocks(const TorusBox& box, int N, RngSeed seed, double jitter) {
    require_integer_side(box, "gen_collapse_blocks");
    const int L = int(box.L);
    if (N < 2 || L % N != 0)
        throw BlockMismatch("gen_collapse_blocks: N must divide L and be >= 2, N=" +
                            std::to_string(N) + " L=" + std::to_string(L));
    CounterRng rng(substream(seed, kTau));
    const double tx = rng.uniform(0.0, box.L), ty = rng.uniform(0.0, box.L);
    PointConfiguration cfg;
    cfg.box = box;
    const int nb = L / N;
    if (jitter <= 0.0) {
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j) cfg.push({i * double(N) + tx, j * double(N) + ty}, N * N);
        return cfg;
    }
    // simple variant: the N^2 collapsed points land at independent uniform
    // positions in a small disk around the block center
    CounterRng jrng(substream(seed, kJitter));
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            for (int k = 0; k < N * N; ++k) {
                const double r = jitter * std::sqrt(jrng.uniform01());
                const double th = jrng.uniform(0.0, 2.0 * M_PI);
                cfg.push({i * double(N) + tx + r * std::cos(th),
                          j * double(N) + ty + r * std::sin(th)});
            }
    return cfg;
}

PointConfiguration gen_binomial_blocks(const TorusBox& box, int N, RngSeed seed) {
    require_integer_side(box, "gen_binomial_blocks");
    const int L = int(box.L);
    if (N < 1 || L % N != 0)
        throw BlockMismatch("gen_binomial_blocks: N must divide L, N=" + std::to_string(N) +
                            " L=" + std::to_string(L));
    CounterRng trng(substream(seed, kTau));
    const double tx = trng.uniform(0.0, box.L), ty = trng.uniform(0.0, box.L);
    CounterRng rng(substream(seed, kPositions));
    PointConfiguration cfg;
    cfg.box = box;
    const int nb = L / N;
    cfg.pos.reserve(std::size_t(L) * L);
    cfg.mult.reserve(std::size_t(L) * L);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            for (int k = 0; k < N * N; ++k)
                cfg.push({i * double(N) + rng.uniform(0.0, N) + tx,
                          j * double(N) + rng.uniform(0.0, N) + ty});
    return cfg;
}

PointConfiguration gen_mixture(const std::vector<double>& weights,
                               const std::vector<ProcessSpec>& components, const TorusBox& box,
                               RngSeed seed) {
    if (weights.empty() || weights.size() != components.size())
        throw EmptyMixture("gen_mixture: need matching nonempty weights and components");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw EmptyMixture("gen_mixture: weights must be positive");
        total += w;
    }
    CounterRng rng(substream(seed, kMixture));
    const double u = rng.uniform01() * total;
    double acc = 0.0;
    std::size_t pick = weights.size() - 1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) {
            pick = i;
            break;
        }
    }
    return sample(components[pick], box, seed);
}

PointConfiguration sample(const ProcessSpec& spec, const TorusBox& box, RngSeed seed) {
    switch (spec.kind) {
        case ProcessSpec::Kind::Poisson: return gen_poisson(box, spec.intensity, seed);
        case ProcessSpec::Kind::StationaryLattice: return gen_stationary_lattice(box, seed);
        case ProcessSpec::Kind::PerturbedLattice:
            return gen_perturbed_lattice(box, spec.law, seed);
        case ProcessSpec::Kind::CollapseBlocks:
            return gen_collapse_blocks(box, spec.block, seed, spec.jitter);
        case ProcessSpec::Kind::BinomialBlocks: return gen_binomial_blocks(box, spec.block, seed);
        case ProcessSpec::Kind::Mixture: return gen_mixture(spec.weights, spec.components, box, seed);
    }
    throw std::runtime_error("sample: unknown process kind");
}

bool exact_count(const ProcessSpec& spec) {
    switch (spec.kind) {
        case ProcessSpec::Kind::Poisson: return false;
        case ProcessSpec::Kind::StationaryLattice:
        case ProcessSpec::Kind::PerturbedLattice:
        case ProcessSpec::Kind::CollapseBlocks:
        case ProcessSpec::Kind::BinomialBlocks: return true;
        case ProcessSpec::Kind::Mixture:
            for (const auto& c : spec.components)
                if (!exact_count(c)) return false;
            return true;
    }
    return false;
}

namespace {
using nlohmann::json;

json law_to_json(const DisplacementLaw& law) {
    switch (law.kind) {
        case DisplacementLaw::Kind::Zero: return {{"kind", "zero"}};
        case DisplacementLaw::Kind::IsotropicGaussian:
            return {{"kind", "gaussian"}, {"sigma", law.sigma}};
        case DisplacementLaw::Kind::RadialPowerTail:
            return {{"kind", "power"}, {"alpha", law.alpha}, {"scale", law.scale}};
    }
    return {};
}

DisplacementLaw law_from_json(const json& j) {
    const std::string kind = j.at("kind");
    if (kind == "zero") return DisplacementLaw::zero();
    if (kind == "gaussian") return DisplacementLaw::gaussian(j.at("sigma").get<double>());
    if (kind == "power")
        return DisplacementLaw::power_tail(j.at("alpha").get<double>(),
                                           j.value("scale", 1.0));
    throw std::runtime_error("unknown displacement law kind: " + kind);
}

json spec_to_json_impl(const ProcessSpec& s) {
    switch (s.kind) {
        case ProcessSpec::Kind::Poisson:
            return {{"kind", "poisson"}, {"intensity", s.intensity}};
        case ProcessSpec::Kind::StationaryLattice: return {{"kind", "lattice"}};
        case ProcessSpec::Kind::PerturbedLattice:
            return {{"kind", "perturbed"}, {"law", law_to_json(s.law)}};
        case ProcessSpec::Kind::CollapseBlocks:
            return {{"kind", "collapse"}, {"N", s.block}, {"jitter", s.jitter}};
        case ProcessSpec::Kind::BinomialBlocks: return {{"kind", "binomial"}, {"N", s.block}};
        case ProcessSpec::Kind::Mixture: {
            json comps = json::array();
            for (std::size_t i = 0; i < s.components.size(); ++i)
                comps.push_back({{"weight", s.weights[i]}, {"spec", spec_to_json_impl(s.components[i])}});
            return {{"kind", "mixture"}, {"components", comps}};
        }
    }
    return {};
}

ProcessSpec spec_from_json_impl(const json& j) {
    const std::string kind = j.at("kind");
    if (kind == "poisson") return ProcessSpec::poisson(j.value("intensity", 1.0));
    if (kind == "lattice") return ProcessSpec::lattice();
    if (kind == "perturbed") return ProcessSpec::perturbed(law_from_json(j.at("law")));
    if (kind == "collapse")
        return ProcessSpec::collapse(j.at("N").get<int>(), j.value("jitter", 0.0));
    if (kind == "binomial") return ProcessSpec::binomial(j.at("N").get<int>());
    if (kind == "mixture") {
        std::vector<double> w;
        std::vector<ProcessSpec> comps;
        for (const auto& c : j.at("components")) {
            w.push_back(c.at("weight").get<double>());
            comps.push_back(spec_from_json_impl(c.at("spec")));
        }
        return ProcessSpec::mixture(std::move(w), std::move(comps));
    }
    throw std::runtime_error("unknown process kind: " + kind);
}
} // namespace

ProcessSpec parse_process_spec(const std::string& json_text) {
    return spec_from_json_impl(json::parse(json_text));
}

std::string process_spec_to_json(const ProcessSpec& spec) {
    return spec_to_json_impl(spec).dump();
}

} // namespace hyperlab
