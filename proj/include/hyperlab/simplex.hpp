#pragma once
#include <cstdint>
#include <vector>

namespace hyperlab {

// Uncapacitated balanced transportation problem on a bipartite graph with an
// explicit candidate arc list. Solved by primal network simplex (block
// pivoting). Optimality over arcs NOT in the list is the caller's job (full
// pricing with the returned potentials).
struct TransportationProblem {
    std::vector<double> supply;
    std::vector<double> demand;
    std::vector<std::uint32_t> tail; // source index per arc
    std::vector<std::uint32_t> head; // sink index per arc
    std::vector<double> cost;

    void add_arc(std::uint32_t s, std::uint32_t t, double c) {
        tail.push_back(s);
        head.push_back(t);
        cost.push_back(c);
    }
    std::size_t arcs() const { return cost.size(); }
};

struct TransportationSolution {
    bool feasible = false;
    double total_cost = 0.0;
    std::vector<double> flow;       // per candidate arc
    std::vector<double> pi_source;  // duals; reduced cost of (s,t) = c - pi_source[s] + pi_sink[t]
    std::vector<double> pi_sink;
    int pivots = 0;
};

TransportationSolution solve_transportation(const TransportationProblem& prob);

} // namespace hyperlab
