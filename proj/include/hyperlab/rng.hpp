#pragma once
#include <cmath>
#include <cstdint>

namespace hyperlab {

// Seed identity of one random stream. Replicas take consecutive stream ids,
// which makes parallel runs order-independent: the draws of stream k never
// depend on how many draws other streams made.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RngSeed with_stream(std::uint64_t s) const { return {seed, s}; }
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
} // namespace detail

// Counter-based generator: output i is mix(key + i*golden), i.e. a keyed hash
// of the draw counter. Identical (seed, stream) reproduces identical samples.
class CounterRng {
  public:
    explicit CounterRng(RngSeed s)
        : key_(detail::mix64(detail::mix64(s.seed + 0x9E3779B97F4A7C15ULL) ^
                             detail::mix64(s.stream + 0xD1B54A32D192ED03ULL))),
          ctr_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + (++ctr_) * 0x9E3779B97F4A7C15ULL;
        return detail::mix64(z);
    }

    // 53-bit uniform in [0,1)
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // unbiased integer in [0, bound)
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t lim = -bound % bound;
        std::uint64_t x;
        do { x = next_u64(); } while (x < lim);
        return x % bound;
    }

    double normal(double mean = 0.0, double sd = 1.0) {
        // Box-Muller; second value discarded to keep the draw count per call fixed
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        return mean + sd * r * std::cos(6.283185307179586476925287 * u2);
    }

    // exact Poisson sample by summing exponential inter-arrival times
    std::uint64_t poisson(double mean) {
        std::uint64_t k = 0;
        double acc = 0.0;
        while (true) {
            acc += -std::log1p(-uniform01());
            if (acc >= mean) break;
            ++k;
        }
        return k;
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

// Distinct sub-streams for different purposes inside one generator call, so
// that e.g. the lattice shift draw is shared between related generators.
inline RngSeed substream(RngSeed s, std::uint64_t purpose) {
    return {s.seed, detail::mix64(s.stream ^ detail::mix64(purpose + 0x165667B19E3779F9ULL))};
}

} // namespace hyperlab
