#include "gbp/graph.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gbp/errors.hpp"
#include "gbp/rng.hpp"

namespace gbp {

SimpleGraph::SimpleGraph(int n) : n_(n) {
    if (n < 0) throw input_error("negative vertex count");
    adj_.assign(std::size_t(n), Bitset(std::size_t(n)));
}

void SimpleGraph::add_edge(int u, int v) {
    if (u == v) throw input_error("loop edge " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw input_error("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (adj_[u].test(std::size_t(v))) return;
    adj_[u].set(std::size_t(v));
    adj_[v].set(std::size_t(u));
    ++m_;
}

void SimpleGraph::remove_edge(int u, int v) {
    if (!has_edge(u, v)) return;
    adj_[u].reset(std::size_t(v));
    adj_[v].reset(std::size_t(u));
    --m_;
}

std::vector<Edge> SimpleGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(std::size_t(m_));
    for (int u = 0; u < n_; ++u)
        adj_[u].for_each([&](int v) {
            if (v > u) out.push_back(Edge(u, v));
        });
    return out;
}

SimpleGraph complete_graph(int n) {
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

namespace {

bool parse_int(const std::string& tok, long long& out) {
    if (tok.empty()) return false;
    char* end = nullptr;
    out = std::strtoll(tok.c_str(), &end, 10);
    return end && *end == '\0';
}

} // namespace

SimpleGraph graph_from_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long long header_n = -1;
    bool seen_content = false;
    std::vector<std::pair<long long, long long>> raw;
    long long max_label = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::istringstream ls(line.substr(start));
        std::string a, b, extra;
        ls >> a;
        if (!seen_content && a.rfind("n=", 0) == 0) {
            seen_content = true;
            if (ls >> extra)
                throw input_error("line " + std::to_string(lineno) + ": trailing tokens after header");
            if (!parse_int(a.substr(2), header_n) || header_n < 0)
                throw input_error("line " + std::to_string(lineno) + ": bad vertex count header");
            continue;
        }
        seen_content = true;
        if (!(ls >> b) || (ls >> extra))
            throw input_error("line " + std::to_string(lineno) + ": expected 'u v'");
        long long u, v;
        if (!parse_int(a, u) || !parse_int(b, v))
            throw input_error("line " + std::to_string(lineno) + ": bad vertex label");
        if (u < 0 || v < 0)
            throw input_error("line " + std::to_string(lineno) + ": negative vertex label");
        if (u == v) throw input_error("line " + std::to_string(lineno) + ": loop edge");
        raw.emplace_back(u, v);
        max_label = std::max({max_label, u, v});
    }
    long long n = header_n >= 0 ? header_n : max_label + 1;
    if (header_n >= 0 && max_label >= header_n)
        throw input_error("edge label " + std::to_string(max_label) + " exceeds declared n=" +
                          std::to_string(header_n));
    if (n > 100000) throw size_limit_error("vertex count " + std::to_string(n) + " exceeds 100000");
    SimpleGraph g{int(n)};
    for (auto [u, v] : raw) g.add_edge(int(u), int(v));
    return g;
}

std::string serialize(const SimpleGraph& g) {
    std::ostringstream out;
    out << "n=" << g.vertex_count() << "\n";
    for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
    return out.str();
}

namespace {

// advance (row u, col v) representation of a linear edge index
struct EdgeCursor {
    int n;
    int u = 0;
    std::uint64_t row_start = 0; // linear index of edge (u, u+1)
    Edge at(std::uint64_t idx) {
        while (idx >= row_start + std::uint64_t(n - 1 - u)) {
            row_start += std::uint64_t(n - 1 - u);
            ++u;
        }
        return Edge(u, u + 1 + int(idx - row_start));
    }
};

} // namespace

SimpleGraph erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 2) throw input_error("erdos_renyi needs n >= 2");
    if (n > 100000) throw size_limit_error("erdos_renyi capped at n=100000");
    if (!(p >= 0.0 && p <= 1.0)) throw input_error("p outside [0,1]");
    SimpleGraph g(n);
    if (p == 0.0) return g;
    if (p == 1.0) return complete_graph(n);
    if (n <= 4096) {
        std::uint64_t idx = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v, ++idx)
                if (unit_double(mix_seed(seed, idx)) < p) g.add_edge(u, v);
        return g;
    }
    SplitMix64 rng(seed);
    const double logq = std::log1p(-p);
    const std::uint64_t total = g.max_edges();
    EdgeCursor cur{n};
    std::uint64_t idx = 0;
    while (true) {
        double gap = std::floor(std::log1p(-rng.next_unit()) / logq);
        if (gap > double(total)) break;
        idx += std::uint64_t(gap);
        if (idx >= total) break;
        g.add_edge(cur.at(idx));
        ++idx;
    }
    return g;
}

bool is_connected(const SimpleGraph& g) {
    int n = g.vertex_count();
    if (n <= 1) return true;
    Bitset seen((std::size_t(n)));
    std::vector<int> stack{0};
    seen.set(0);
    std::size_t reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        g.neighbors(u).for_each([&](int v) {
            if (!seen.test(std::size_t(v))) {
                seen.set(std::size_t(v));
                ++reached;
                stack.push_back(v);
            }
        });
    }
    return reached == std::size_t(n);
}

Bitset common_neighbors(const SimpleGraph& g, int u, int v) {
    if (u == v) throw input_error("common_neighbors of a vertex with itself");
    if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
        throw input_error("vertex out of range");
    return g.neighbors(u) & g.neighbors(v);
}

namespace {

bool clique_search(const SimpleGraph& g, Bitset cands, int need) {
    if (need == 0) return true;
    while (true) {
        if (cands.count() < std::size_t(need)) return false;
        int v = cands.find_first();
        if (v < 0) return false;
        cands.reset(std::size_t(v));
        if (clique_search(g, cands & g.neighbors(v), need - 1)) return true;
    }
}

} // namespace

bool has_clique_in(const SimpleGraph& g, const Bitset& s, int k) {
    if (k <= 0) return true;
    return clique_search(g, s, k);
}

} // namespace gbp
