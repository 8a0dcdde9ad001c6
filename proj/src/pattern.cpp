#include "gbp/pattern.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

#include "gbp/errors.hpp"

namespace gbp {

PatternGraph::PatternGraph(SimpleGraph base) : base_(std::move(base)) {
    int v = base_.vertex_count();
    if (v < 2) throw input_error("pattern needs at least 2 vertices");
    if (v > 16) throw size_limit_error("pattern capped at 16 vertices");
    if (base_.edge_count() == 0) throw input_error("pattern needs at least one edge");
    if (!is_connected(base_)) throw input_error("pattern must be connected");
    for (const Edge& e : base_.edges()) {
        SimpleGraph t = base_;
        t.remove_edge(e.u, e.v);
        completions_.push_back(Completion{e, std::move(t)});
    }
}

Rational lambda(const PatternGraph& H) {
    if (H.vertex_count() < 3) throw input_error("lambda needs v(H) >= 3");
    return Rational((long long)H.edge_count() - 2, H.vertex_count() - 2);
}

Rational lambda_for_clique(int r) {
    if (r < 3) throw input_error("lambda needs r >= 3");
    return Rational((long long)r * (r - 1) / 2 - 2, r - 2);
}

namespace {

// adjacency as 16-bit masks for subset sweeps
std::vector<unsigned> mask_adjacency(const SimpleGraph& g) {
    std::vector<unsigned> a(std::size_t(g.vertex_count()), 0);
    for (const Edge& e : g.edges()) {
        a[std::size_t(e.u)] |= 1u << e.v;
        a[std::size_t(e.v)] |= 1u << e.u;
    }
    return a;
}

int induced_edges(const std::vector<unsigned>& adj, unsigned mask) {
    int twice = 0;
    unsigned rest = mask;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        twice += std::popcount(adj[std::size_t(v)] & mask);
    }
    return twice / 2;
}

} // namespace

bool is_balanced(const PatternGraph& H) {
    int v = H.vertex_count();
    if (v < 4) throw input_error("is_balanced needs v(H) >= 4");
    long long e = (long long)H.edge_count();
    if (e < 2 * v - 2) return false;
    // (e(F)-1)/(v(F)-2) is maximized, for fixed vertex set, by the full induced
    // edge set, so scanning vertex subsets covers every subgraph
    auto adj = mask_adjacency(H.base());
    unsigned full = (1u << v) - 1;
    for (unsigned mask = 0; mask <= full; ++mask) {
        int w = std::popcount(mask);
        if (w < 3 || mask == full) continue;
        long long ef = induced_edges(adj, mask);
        // (ef - 1)/(w - 2) <= (e - 2)/(v - 2)
        if ((ef - 1) * (long long)(v - 2) > (e - 2) * (long long)(w - 2)) return false;
    }
    return true;
}

Rational lambda_star(const PatternGraph& H) {
    int v = H.vertex_count();
    auto edges = H.base().edges();
    Rational best;
    bool first = true;
    for (const Edge& rem : edges) {
        SimpleGraph t = H.base();
        t.remove_edge(rem.u, rem.v);
        auto adj = mask_adjacency(t);
        unsigned full = (1u << v) - 1;
        Rational dens(0, 1);
        for (unsigned mask = 1; mask <= full; ++mask) {
            Rational r(induced_edges(adj, mask), std::popcount(mask));
            if (dens < r) dens = r;
        }
        if (first || dens < best) {
            best = dens;
            first = false;
        }
    }
    return best;
}

GadgetResult build_gadget(const PatternGraph& H, int d) {
    if (d < 1) throw input_error("gadget depth must be >= 1");
    auto edges = H.base().edges();
    Edge e1, e2;
    bool found = false;
    for (std::size_t i = 0; i < edges.size() && !found; ++i)
        for (std::size_t j = 0; j < edges.size() && !found; ++j) {
            if (i == j) continue;
            const Edge &a = edges[i], &b = edges[j];
            if (a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v) {
                e1 = a;
                e2 = b;
                found = true;
            }
        }
    if (!found) throw input_error("pattern has no two disjoint edges; gadget undefined");

    int hv = H.vertex_count();
    auto glue = [&](int j) { return j % 2 == 1 ? e1 : e2; }; // e_j, 1-based
    std::vector<std::vector<int>> map(std::size_t(d + 1), std::vector<int>(std::size_t(hv), -1));
    int next_id = 0;
    for (int x = 0; x < hv; ++x) map[1][std::size_t(x)] = next_id++;
    for (int j = 2; j <= d; ++j) {
        Edge shared = glue(j);
        map[std::size_t(j)][std::size_t(shared.u)] = map[std::size_t(j - 1)][std::size_t(shared.u)];
        map[std::size_t(j)][std::size_t(shared.v)] = map[std::size_t(j - 1)][std::size_t(shared.v)];
        for (int x = 0; x < hv; ++x)
            if (map[std::size_t(j)][std::size_t(x)] < 0) map[std::size_t(j)][std::size_t(x)] = next_id++;
    }

    SimpleGraph g(next_id);
    for (int j = 1; j <= d; ++j) {
        Edge skip1 = glue(j);
        bool has_skip2 = j < d;
        Edge skip2 = glue(j + 1);
        for (const Edge& e : edges) {
            if (e == skip1 || (has_skip2 && e == skip2)) continue;
            g.add_edge(map[std::size_t(j)][std::size_t(e.u)], map[std::size_t(j)][std::size_t(e.v)]);
        }
    }
    Edge root(map[1][std::size_t(e1.u)], map[1][std::size_t(e1.v)]);
    return GadgetResult{std::move(g), root, d};
}

std::uint64_t wsat_bound(int n, int r) {
    if (r < 3 || r > n) throw input_error("wsat_bound needs 3 <= r <= n");
    auto c2 = [](std::uint64_t k) { return k * (k - 1) / 2; };
    return c2(std::uint64_t(n)) - c2(std::uint64_t(n - r + 2));
}

SimpleGraph wsat_construction(int n, int r) {
    std::uint64_t want = wsat_bound(n, r);
    SimpleGraph g(n);
    for (int u = 0; u < r - 2; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    if (g.edge_count() != want) throw std::logic_error("wsat_construction size mismatch");
    return g;
}

std::pair<double, double> kr_threshold_window(int n, int r) {
    if (r < 4) throw input_error("threshold window defined for r >= 4");
    if (n < 3) throw input_error("threshold window needs n >= 3");
    double ln_n = std::log(double(n));
    double low, high;
    if (r == 4) {
        double s = std::sqrt(double(n) * ln_n);
        low = 0.25 / s;
        high = 24.0 / s;
    } else {
        Rational lam = lambda_for_clique(r);
        double x = std::exp(-ln_n * double(lam.den) / double(lam.num));
        low = x / ln_n;
        high = x * ln_n;
    }
    high = std::min(high, 1.0);
    low = std::min(low, 1.0);
    return {low, high};
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

int to_int(const std::string& s) { return int(std::strtol(s.c_str(), nullptr, 10)); }

} // namespace

PatternGraph named_pattern(const std::string& name) {
    if (name.rfind("DD", 0) == 0 && all_digits(name.substr(2))) {
        int r = to_int(name.substr(2));
        if (r < 3) throw input_error("DD<r> needs r >= 3");
        if (2 * r > 16) throw size_limit_error("DD<r> capped at r=8");
        SimpleGraph g(2 * r);
        for (int u = 0; u < r; ++u)
            for (int v = u + 1; v < r; ++v) {
                g.add_edge(u, v);
                g.add_edge(r + u, r + v);
            }
        g.add_edge(0, r);
        g.add_edge(1, r + 1);
        return PatternGraph(std::move(g));
    }
    if (name.size() > 1 && name[0] == 'C' && all_digits(name.substr(1))) {
        int k = to_int(name.substr(1));
        if (k < 3) throw input_error("C<k> needs k >= 3");
        if (k > 16) throw size_limit_error("C<k> capped at k=16");
        SimpleGraph g(k);
        for (int i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k);
        return PatternGraph(std::move(g));
    }
    if (name.size() > 1 && name[0] == 'K') {
        std::string rest = name.substr(1);
        std::size_t comma = rest.find(',');
        if (comma == std::string::npos) {
            if (!all_digits(rest)) throw input_error("unknown pattern '" + name + "'");
            int r = to_int(rest);
            if (r < 2) throw input_error("K<r> needs r >= 2");
            if (r > 16) throw size_limit_error("K<r> capped at r=16");
            return PatternGraph(complete_graph(r));
        }
        std::string a = rest.substr(0, comma), b = rest.substr(comma + 1);
        if (!all_digits(a) || !all_digits(b)) throw input_error("unknown pattern '" + name + "'");
        int s = to_int(a), t = to_int(b);
        if (s < 1 || t < 1) throw input_error("K<s>,<t> needs s,t >= 1");
        if (s + t > 16) throw size_limit_error("K<s>,<t> capped at s+t=16");
        SimpleGraph g(s + t);
        for (int u = 0; u < s; ++u)
            for (int v = 0; v < t; ++v) g.add_edge(u, s + v);
        return PatternGraph(std::move(g));
    }
    throw input_error("unknown pattern '" + name + "'");
}

} // namespace gbp
