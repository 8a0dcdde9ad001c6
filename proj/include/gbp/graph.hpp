#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gbp/bitset.hpp"

namespace gbp {

struct Edge {
    int u = 0;
    int v = 0;
    Edge() = default;
    Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// simple undirected graph on labels 0..n-1, dense bitset adjacency
class SimpleGraph {
  public:
    SimpleGraph() = default;
    explicit SimpleGraph(int n);

    int vertex_count() const { return n_; }
    std::uint64_t edge_count() const { return m_; }
    std::uint64_t max_edges() const { return std::uint64_t(n_) * (n_ - 1) / 2; }

    bool has_edge(int u, int v) const { return u != v && adj_[u].test(std::size_t(v)); }
    bool has_edge(Edge e) const { return has_edge(e.u, e.v); }
    void add_edge(int u, int v); // idempotent; rejects loops
    void add_edge(Edge e) { add_edge(e.u, e.v); }
    void remove_edge(int u, int v);

    const Bitset& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return int(adj_[v].count()); }
    std::vector<Edge> edges() const; // ascending (u, v)
    bool is_complete() const { return n_ >= 0 && m_ == max_edges(); }

    bool operator==(const SimpleGraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

  private:
    int n_ = 0;
    std::uint64_t m_ = 0;
    std::vector<Bitset> adj_;
};

SimpleGraph complete_graph(int n);

// text format: optional first line "n=<k>", then one "u v" per line;
// '#' lines are comments, duplicates are dropped, loops rejected
SimpleGraph graph_from_edge_list(const std::string& text);
std::string serialize(const SimpleGraph& g);

// G(n,p) with per-edge variates hashed from (seed, edge index) up to n=4096,
// geometric skip sampling above; the sampler is selected by n only
SimpleGraph erdos_renyi(int n, double p, std::uint64_t seed);

bool is_connected(const SimpleGraph& g);
Bitset common_neighbors(const SimpleGraph& g, int u, int v);

// does the induced subgraph on s contain a k-clique
bool has_clique_in(const SimpleGraph& g, const Bitset& s, int k);

} // namespace gbp
