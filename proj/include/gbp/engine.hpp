#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gbp/graph.hpp"
#include "gbp/pattern.hpp"

namespace gbp {

// one infection: the edge plus the sorted vertex tuple of the completed copy
struct InfectionEvent {
    Edge edge;
    std::vector<int> witness;
};

// round-synchronous closure record; round 0 is the seed
class InfectionTrace {
  public:
    std::vector<Edge> initial;
    std::vector<std::vector<InfectionEvent>> rounds;

    // 0 for seed edges, t>=1 for round-t infections, nullopt otherwise
    std::optional<int> infection_round(Edge e) const;
    void index_edge(Edge e, int round);

  private:
    std::unordered_map<std::uint64_t, int> round_of_;
};

std::optional<int> infection_round(const InfectionTrace& t, Edge e);

// closure under K_r; witness tuples are the lexicographically smallest
// completed clique per event
std::pair<SimpleGraph, InfectionTrace> close_kr(const SimpleGraph& g, int r);

// closure under an arbitrary pattern via anchored embedding search
std::pair<SimpleGraph, InfectionTrace> close_generic(const SimpleGraph& g, const PatternGraph& H);

// closure == K_n; routed to percolation-only fast paths at scale
bool percolates(const SimpleGraph& g, int r);
bool percolates(const SimpleGraph& g, const PatternGraph& H);

} // namespace gbp
