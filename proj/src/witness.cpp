#include "gbp/witness.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

#include "gbp/bitset.hpp"
#include "gbp/errors.hpp"

namespace gbp {

namespace {

std::uint64_t ekey(Edge e) {
    return (std::uint64_t(std::uint32_t(e.u)) << 32) | std::uint32_t(e.v);
}

void validate_edge(const SimpleGraph& g, Edge e) {
    if (e.u == e.v) throw input_error("edge endpoints must differ");
    if (e.u < 0 || e.v >= g.vertex_count())
        throw input_error("edge endpoint out of range");
}

void validate_r(int r) {
    if (r < 4) throw input_error("witness analysis requires r >= 4");
}

long long pairs_of(int r) { return (long long)r * (r - 1) / 2; }

// full closure replay with per-edge witness sets over seed indices;
// canonical order: seeds, then each round's infections ascending
struct WsaRun {
    SimpleGraph closure;
    std::vector<Edge> order;
    std::vector<std::vector<int>> cliques; // empty for seeds
    std::vector<Bitset> fsets;
    std::unordered_map<std::uint64_t, int> pos;
    int seed_count = 0;

    explicit WsaRun(const SimpleGraph& g, int r) : closure(0) {
        if (g.vertex_count() > 256)
            throw size_limit_error("witness analysis limited to 256 vertices");
        auto [cl, trace] = close_kr(g, r);
        closure = std::move(cl);
        seed_count = int(trace.initial.size());
        for (Edge e : trace.initial) {
            int i = int(order.size());
            pos.emplace(ekey(e), i);
            order.push_back(e);
            cliques.emplace_back();
            fsets.emplace_back(std::size_t(seed_count));
            fsets.back().set(std::size_t(i));
        }
        for (const auto& round : trace.rounds) {
            for (const InfectionEvent& ev : round) {
                Bitset f{std::size_t(seed_count)};
                const std::vector<int>& w = ev.witness;
                for (std::size_t i = 0; i < w.size(); ++i)
                    for (std::size_t j = i + 1; j < w.size(); ++j) {
                        Edge p(w[i], w[j]);
                        if (p == ev.edge) continue;
                        f |= fsets[std::size_t(pos.at(ekey(p)))];
                    }
                pos.emplace(ekey(ev.edge), int(order.size()));
                order.push_back(ev.edge);
                cliques.push_back(w);
                fsets.push_back(std::move(f));
            }
        }
    }

    int position_of(Edge e) const {
        auto it = pos.find(ekey(e));
        if (it == pos.end())
            throw input_error("edge is not infected by the closure");
        return it->second;
    }

    WitnessSet materialize(Edge target, const Bitset& f) const {
        WitnessSet w;
        w.target = target;
        std::set<int> verts;
        f.for_each([&](std::size_t i) {
            Edge s = order[i];
            w.edges.push_back(s);
            verts.insert(s.u);
            verts.insert(s.v);
        });
        w.vertex_count = int(verts.size());
        w.edge_count = int(w.edges.size());
        return w;
    }
};

} // namespace

WitnessSet witness_set(const SimpleGraph& g, int r, Edge e) {
    validate_r(r);
    validate_edge(g, e);
    if (g.has_edge(e)) return {e, {e}, 2, 1, true};
    WsaRun run(g, r);
    return run.materialize(e, run.fsets[std::size_t(run.position_of(e))]);
}

RedEdgeTrace red_edge_trace(const SimpleGraph& g, int r, Edge e) {
    validate_r(r);
    validate_edge(g, e);
    if (g.has_edge(e))
        throw input_error("target edge is initially present; witness is trivial");
    WsaRun run(g, r);
    int pe = run.position_of(e);
    const Bitset& fe = run.fsets[std::size_t(pe)];

    RedEdgeTrace out;
    out.target = e;
    std::set<Edge> union_pairs;
    std::set<Edge> red_set;
    std::set<int> union_verts;
    std::vector<std::vector<int>> cliques; // accumulated K^(1..t)
    for (int i = run.seed_count; i <= pe; ++i) {
        if (!run.fsets[std::size_t(i)].is_subset_of(fe)) continue;
        const std::vector<int>& w = run.cliques[std::size_t(i)];
        for (std::size_t a = 0; a < w.size(); ++a)
            for (std::size_t b = a + 1; b < w.size(); ++b)
                union_pairs.insert(Edge(w[a], w[b]));
        for (int v : w) union_verts.insert(v);
        red_set.insert(run.order[std::size_t(i)]);
        cliques.push_back(w);

        RedEdgeStep step;
        step.clique = w;
        step.red = run.order[std::size_t(i)];
        for (const Edge& p : union_pairs)
            if (!red_set.count(p)) step.b_edges_list.push_back(p);
        step.b_vertices = int(union_verts.size());
        step.b_edges = int(step.b_edges_list.size());

        // components of the clique graph: adjacent when sharing >= 2 vertices
        int t = int(cliques.size());
        std::vector<int> comp(std::size_t(t), -1);
        int ell = 0;
        for (int s = 0; s < t; ++s) {
            if (comp[std::size_t(s)] >= 0) continue;
            std::vector<int> stack = {s};
            comp[std::size_t(s)] = ell;
            while (!stack.empty()) {
                int a = stack.back();
                stack.pop_back();
                for (int b = 0; b < t; ++b) {
                    if (comp[std::size_t(b)] >= 0) continue;
                    const auto& wa = cliques[std::size_t(a)];
                    const auto& wb = cliques[std::size_t(b)];
                    int shared = 0;
                    std::size_t x = 0, y = 0;
                    while (x < wa.size() && y < wb.size()) {
                        if (wa[x] < wb[y]) ++x;
                        else if (wa[x] > wb[y]) ++y;
                        else { ++shared; ++x; ++y; }
                    }
                    if (shared >= 2) {
                        comp[std::size_t(b)] = ell;
                        stack.push_back(b);
                    }
                }
            }
            ++ell;
        }
        step.ell = ell;
        // k_t: vertices counted once per extra component containing them
        std::map<int, std::set<int>> comps_of;
        for (int s = 0; s < t; ++s)
            for (int v : cliques[std::size_t(s)])
                comps_of[v].insert(comp[std::size_t(s)]);
        int k = 0;
        for (const auto& [v, cs] : comps_of) k += int(cs.size()) - 1;
        step.k = k;

        out.steps.push_back(std::move(step));
    }
    return out;
}

bool check_extremal(const WitnessSet& w, int r) {
    if (r < 3) throw input_error("check_extremal requires r >= 3");
    long long lhs = (long long)w.edge_count * (r - 2);
    long long rhs =
        (pairs_of(r) - 2) * (w.vertex_count - 2) + (r - 2);
    return lhs >= rhs;
}

bool check_tech(const RedEdgeTrace& t, int r, int step) {
    if (r < 3) throw input_error("check_tech requires r >= 3");
    if (step < 1 || step > int(t.steps.size()))
        throw input_error("check_tech: step out of range");
    const RedEdgeStep& s = t.steps[std::size_t(step - 1)];
    long long lam_num = pairs_of(r) - 2;
    long long lhs = (long long)s.b_edges * (r - 2);
    long long rhs = lam_num * ((long long)s.b_vertices + s.k - (long long)s.ell * r) +
                    (long long)s.ell * (pairs_of(r) - 1) * (r - 2);
    return lhs >= rhs;
}

std::optional<Edge> witness_scale_scan(const SimpleGraph& g, int r, Edge e,
                                       int L) {
    validate_r(r);
    validate_edge(g, e);
    if (L < 1) throw input_error("witness_scale_scan: L must be positive");
    long long cap = pairs_of(r) * L;
    if (g.has_edge(e)) return std::nullopt; // e(F(e)) = 1 < C(r,2) L
    WsaRun run(g, r);
    int pe = run.position_of(e);
    const Bitset& fe = run.fsets[std::size_t(pe)];
    if ((long long)fe.count() < cap) return std::nullopt;
    for (int i = 0; i <= pe; ++i) {
        const Bitset& f = run.fsets[std::size_t(i)];
        if (!f.is_subset_of(fe)) continue;
        long long c = (long long)f.count();
        if (c >= L && c <= cap) return run.order[std::size_t(i)];
    }
    return std::nullopt;
}

} // namespace gbp
