#pragma once
#include <cstdint>
#include <vector>

namespace hyperlab {
namespace detail {

struct SinkhornOut {
    std::vector<double> flow;
    std::vector<std::uint32_t> extra_tail, extra_head;
    std::vector<double> extra_mass;
    double marginal_residual = 0.0;
    int iterations = 0;
};

SinkhornOut sinkhorn_sparse(const std::vector<double>& supply, const std::vector<double>& demand,
                            const std::vector<std::uint32_t>& tail,
                            const std::vector<std::uint32_t>& head, const std::vector<double>& cost,
                            double eps);

} // namespace detail
} // namespace hyperlab
