#include "hyperlab/simplex.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace hyperlab {

namespace {

// Node numbering: sources 0..ns-1, sinks ns..ns+nt-1, root = ns+nt.
// Candidate arcs run source -> sink; artificial arcs connect every node to
// the root at big-M cost and form the initial spanning tree.
struct Simplex {
    int ns, nt, V, root;
    std::vector<std::uint32_t> tail, head; // all arcs, artificial appended
    std::vector<double> cost, flow;
    std::vector<std::uint8_t> in_tree;

    std::vector<int> parent, pred_arc, depth;
    std::vector<std::vector<int>> children;
    std::vector<int> child_slot; // index of node in parent's children list
    std::vector<double> pi;

    double tol = 0.0;
    int pivots = 0;

    int other(int arc, int v) const {
        const int t = int(tail[std::size_t(arc)]), h = int(head[std::size_t(arc)]);
        return v == t ? h : t;
    }

    void attach(int v, int p, int arc) {
        parent[std::size_t(v)] = p;
        pred_arc[std::size_t(v)] = arc;
        child_slot[std::size_t(v)] = int(children[std::size_t(p)].size());
        children[std::size_t(p)].push_back(v);
    }

    void detach(int v) {
        const int p = parent[std::size_t(v)];
        auto& kids = children[std::size_t(p)];
        const int slot = child_slot[std::size_t(v)];
        kids[std::size_t(slot)] = kids.back();
        child_slot[std::size_t(kids.back())] = slot;
        kids.pop_back();
    }

    // walk the subtree rooted at v (after re-attachment), refreshing depth and pi
    void refresh_subtree(int v, double dpi) {
        std::vector<int> stack{v};
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            depth[std::size_t(u)] = depth[std::size_t(parent[std::size_t(u)])] + 1;
            pi[std::size_t(u)] += dpi;
            for (int c : children[std::size_t(u)]) stack.push_back(c);
        }
    }

    // flow change on the tree arc above v when pushing t along the cycle
    // toward the root from v (direction: v -> parent). Arc orientation matters:
    // tail->head carries positive flow.
    static double signed_push(const std::uint32_t* tail, int arc, int v, double t) {
        return int(tail[std::size_t(arc)]) == v ? t : -t;
    }

    void solve(TransportationSolution& out, const std::vector<double>& supply,
               const std::vector<double>& demand) {
        const std::size_t nuser = cost.size();
        double maxc = 1.0;
        for (double c : cost) maxc = std::max(maxc, std::abs(c));
        const double bigM = maxc * double(V) * 16.0;
        tol = 1e-11 * (1.0 + maxc);

        parent.assign(std::size_t(V + 1), root);
        pred_arc.assign(std::size_t(V + 1), -1);
        depth.assign(std::size_t(V + 1), 0);
        children.assign(std::size_t(V + 1), {});
        child_slot.assign(std::size_t(V + 1), -1);
        pi.assign(std::size_t(V + 1), 0.0);
        parent[std::size_t(root)] = -1;

        // artificial arcs: source -> root carrying the supply, root -> sink carrying demand
        for (int s = 0; s < ns; ++s) {
            tail.push_back(std::uint32_t(s));
            head.push_back(std::uint32_t(root));
            cost.push_back(bigM);
            flow.push_back(supply[std::size_t(s)]);
            in_tree.push_back(1);
            attach(s, root, int(cost.size()) - 1);
            depth[std::size_t(s)] = 1;
            pi[std::size_t(s)] = bigM; // rc = c - pi[tail] + pi[head] = 0
        }
        for (int t = 0; t < nt; ++t) {
            const int v = ns + t;
            tail.push_back(std::uint32_t(root));
            head.push_back(std::uint32_t(v));
            cost.push_back(bigM);
            flow.push_back(demand[std::size_t(t)]);
            in_tree.push_back(1);
            attach(v, root, int(cost.size()) - 1);
            depth[std::size_t(v)] = 1;
            pi[std::size_t(v)] = -bigM;
        }

        const std::size_t narc = cost.size();
        const std::size_t block = std::max<std::size_t>(64, std::size_t(std::sqrt(double(narc))));
        std::size_t scan_start = 0;
        const long long max_pivots = 64LL * (long long)narc + 100000;

        while (true) {
            // block search for the entering arc (most negative reduced cost in a block)
            int enter = -1;
            double best = -tol;
            std::size_t scanned = 0;
            std::size_t i = scan_start;
            while (scanned < narc) {
                const std::size_t stop = std::min(narc, i + block);
                for (; i < stop; ++i, ++scanned) {
                    if (in_tree[i]) continue;
                    const double rc = cost[i] - pi[tail[i]] + pi[head[i]];
                    if (rc < best) {
                        best = rc;
                        enter = int(i);
                    }
                }
                if (enter >= 0) break;
                if (i >= narc) i = 0;
            }
            if (enter < 0) break; // optimal
            scan_start = (std::size_t(enter) + 1) % narc;

            // cycle: entering arc u->w plus tree paths u..lca and w..lca
            const int u = int(tail[std::size_t(enter)]), w = int(head[std::size_t(enter)]);
            int a = u, b = w;
            // leaving arc: the first arc (closest to the apex on the u side then
            // the w side) attaining the minimum residual among decreasing arcs
            double tmax = std::numeric_limits<double>::infinity();
            int leave = -1;
            bool leave_on_u_side = true;

            // climb to equal depth, tracking min decrease
            auto consider = [&](int node, bool u_side) {
                const int arc = pred_arc[std::size_t(node)];
                // pushing t along cycle: on u side flow runs node->parent against
                // the entering direction ... orientation: cycle direction is
                // w -> ... -> lca -> ... -> u -> (enter) -> w. On the u side the
                // cycle goes parent->node (down), on the w side node->parent (up).
                const bool cycle_up = !u_side;
                const int tl = int(tail[std::size_t(arc)]);
                const bool arc_up = (tl == node); // arc oriented node->parent
                // arc flow decreases when cycle direction opposes arc orientation
                const bool decreases = (arc_up != cycle_up);
                if (decreases && flow[std::size_t(arc)] < tmax) {
                    tmax = flow[std::size_t(arc)];
                    leave = arc;
                    leave_on_u_side = u_side;
                }
            };

            while (depth[std::size_t(a)] > depth[std::size_t(b)]) {
                consider(a, true);
                a = parent[std::size_t(a)];
            }
            while (depth[std::size_t(b)] > depth[std::size_t(a)]) {
                consider(b, false);
                b = parent[std::size_t(b)];
            }
            while (a != b) {
                consider(a, true);
                consider(b, false);
                a = parent[std::size_t(a)];
                b = parent[std::size_t(b)];
            }
            if (leave < 0) throw std::runtime_error("network simplex: unbounded cycle");
            const double t = tmax;

            // apply flow change around the cycle
            flow[std::size_t(enter)] += t;
            for (int v = u; v != a; v = parent[std::size_t(v)]) {
                const int arc = pred_arc[std::size_t(v)];
                const int tl = int(tail[std::size_t(arc)]);
                flow[std::size_t(arc)] += (tl == v) ? -t : t; // cycle runs down on u side
            }
            for (int v = w; v != a; v = parent[std::size_t(v)]) {
                const int arc = pred_arc[std::size_t(v)];
                const int tl = int(tail[std::size_t(arc)]);
                flow[std::size_t(arc)] += (tl == v) ? t : -t; // cycle runs up on w side
            }

            // tree update: remove `leave`, insert `enter`.
            // `leave` connects leaf-side node q0 (deeper endpoint) to its parent.
            const int lt = int(tail[std::size_t(leave)]), lh = int(head[std::size_t(leave)]);
            const int q0 = depth[std::size_t(lt)] > depth[std::size_t(lh)] ? lt : lh;
            in_tree[std::size_t(leave)] = 0;
            in_tree[std::size_t(enter)] = 1;
            detach(q0);

            // the cut subtree contains exactly one endpoint of the entering arc
            // (u if the leaving arc was on the u side, else w); re-root it there
            const int q = leave_on_u_side ? u : w;
            const int p = leave_on_u_side ? w : u;
            // reverse parent pointers along q .. q0
            int prev = p, node = q, prev_arc = enter;
            while (true) {
                const int nxt = (node == q0) ? -1 : parent[std::size_t(node)];
                const int nxt_arc = (node == q0) ? -1 : pred_arc[std::size_t(node)];
                if (node != q0) detach(node);
                attach(node, prev, prev_arc);
                if (nxt < 0) break;
                prev = node;
                prev_arc = nxt_arc;
                node = nxt;
            }
            // potentials: subtree shifts by the entering reduced cost
            const double rc = cost[std::size_t(enter)] - pi[std::size_t(u)] + pi[std::size_t(w)];
            refresh_subtree(q, leave_on_u_side ? rc : -rc);

            if (++pivots > max_pivots)
                throw std::runtime_error("network simplex: pivot limit exceeded");
        }

        // artificial arcs must end empty for a feasible problem
        out.feasible = true;
        for (std::size_t i = nuser; i < cost.size(); ++i)
            if (flow[i] > 1e-7 * (1.0 + std::abs(flow[i]))) out.feasible = false;
        out.flow.assign(flow.begin(), flow.begin() + std::ptrdiff_t(nuser));
        double total = 0.0;
        for (std::size_t i = 0; i < nuser; ++i) total += flow[i] * cost[i];
        out.total_cost = total;
        out.pi_source.assign(pi.begin(), pi.begin() + ns);
        out.pi_sink.assign(pi.begin() + ns, pi.begin() + ns + nt);
        out.pivots = pivots;
    }
};

} // namespace

TransportationSolution solve_transportation(const TransportationProblem& prob) {
    const int ns = int(prob.supply.size());
    const int nt = int(prob.demand.size());
    Simplex sx;
    sx.ns = ns;
    sx.nt = nt;
    sx.V = ns + nt;
    sx.root = ns + nt;
    sx.tail = prob.tail;
    sx.head.resize(prob.head.size());
    for (std::size_t i = 0; i < prob.head.size(); ++i)
        sx.head[i] = prob.head[i] + std::uint32_t(ns); // sinks shifted into node space
    sx.cost = prob.cost;
    sx.flow.assign(prob.cost.size(), 0.0);
    sx.in_tree.assign(prob.cost.size(), 0);

    TransportationSolution out;
    sx.solve(out, prob.supply, prob.demand);
    return out;
}

} // namespace hyperlab
