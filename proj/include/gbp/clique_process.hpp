#pragma once

#include <optional>
#include <vector>

#include "gbp/graph.hpp"

namespace gbp {

// merge process over internally spanned cliques (K_4 rule):
// step 1  merge two cliques sharing >= 2 vertices,
// step 2  once no pair qualifies, merge three cliques pairwise meeting at
//         three distinct vertices, then return to step 1.
// every clique ever created is kept (entries, creation order) so scans over
// intermediate sizes need no re-execution.

struct MergeEvent {
    enum class Kind { pair, triple };
    Kind kind;
    std::vector<int> parts; // entry ids consumed
    int result;             // entry id created
    int result_size;        // v(R) of the result
};

struct CliqueEntry {
    std::vector<int> verts; // sorted
    std::vector<Edge> seeds;
    bool alive = true;
};

struct CliqueCollection {
    int n = 0;
    std::vector<CliqueEntry> entries;
    std::vector<MergeEvent> history;
    std::vector<int> terminal_ids() const;
};

CliqueCollection clique_process(const SimpleGraph& g);

// union of complete graphs on the terminal cliques
SimpleGraph k4_closure_via_cliques(const SimpleGraph& g);

// sizes of every clique ever present, ascending
std::vector<int> internally_spanned_sizes(const CliqueCollection& c);

// first recorded clique with L <= size <= 3L (exists whenever g percolates
// and L <= n, because sizes grow by at most a factor of three per event)
std::optional<std::vector<int>> al_scan(const CliqueCollection& c, int L);

} // namespace gbp
