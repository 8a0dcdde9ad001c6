#pragma once

#include <optional>
#include <vector>

#include "gbp/engine.hpp"
#include "gbp/graph.hpp"

namespace gbp {

// witness set F(e): for an initially present edge, {e}; for an infected edge,
// the union of F over the edges of its canonical witness clique.  canonical
// processing order: infection round, then lexicographic.

struct WitnessSet {
    Edge target;
    std::vector<Edge> edges; // ascending; subset of the initial graph
    int vertex_count = 0;
    int edge_count = 0;
    bool trivial = false; // target was initially present
};

// one step of the red-edge decomposition: e_1, ..., e_m are the infected
// edges with F(e_j) contained in F(e), in canonical order (e_m = e), each
// with its witness clique K^(j); B_t is the union of K^(1..t) minus the red
// edges e_1..e_t.
struct RedEdgeStep {
    std::vector<int> clique; // r vertices, ascending
    Edge red;
    std::vector<Edge> b_edges_list;
    int b_vertices = 0;
    int b_edges = 0;
    int ell = 0; // components of the clique graph (cliques adjacent when
                 // sharing >= 2 vertices)
    int k = 0;   // sum over vertices of (component count - 1)
};

struct RedEdgeTrace {
    Edge target;
    std::vector<RedEdgeStep> steps;
};

WitnessSet witness_set(const SimpleGraph& g, int r, Edge e);
RedEdgeTrace red_edge_trace(const SimpleGraph& g, int r, Edge e);

// e(F) * (r-2) >= (C(r,2)-2) * (v(F)-2) + (r-2), exact in integers
bool check_extremal(const WitnessSet& w, int r);

// e(B_t)(r-2) >= (C(r,2)-2)(v(B_t)+k_t-ell_t*r) + ell_t(C(r,2)-1)(r-2)
bool check_tech(const RedEdgeTrace& t, int r, int step);

// first edge f (canonical order, F(f) subset of F(e)) with
// L <= e(F(f)) <= C(r,2)*L, provided e(F(e)) >= C(r,2)*L; else nullopt
std::optional<Edge> witness_scale_scan(const SimpleGraph& g, int r, Edge e,
                                       int L);

} // namespace gbp
