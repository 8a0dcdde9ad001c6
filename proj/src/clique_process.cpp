#include "gbp/clique_process.hpp"

#include <algorithm>
#include <deque>

#include "gbp/errors.hpp"

namespace gbp {

std::vector<int> CliqueCollection::terminal_ids() const {
    std::vector<int> out;
    for (int i = 0; i < int(entries.size()); ++i)
        if (entries[i].alive) out.push_back(i);
    return out;
}

namespace {

struct ProcessState {
    int n;
    CliqueCollection coll;
    std::vector<std::vector<int>> inc; // vertex -> entry ids (stale allowed)
    std::vector<int> cnt;              // per-entry scratch, zeroed after use
    std::deque<int> work;

    explicit ProcessState(const SimpleGraph& g) : n(g.vertex_count()), inc(n) {
        coll.n = n;
        for (const Edge& e : g.edges()) {
            int id = int(coll.entries.size());
            coll.entries.push_back({{e.u, e.v}, {e}, true});
            inc[e.u].push_back(id);
            inc[e.v].push_back(id);
            work.push_back(id);
        }
        cnt.assign(coll.entries.size(), 0);
    }

    bool alive(int id) const { return coll.entries[id].alive; }

    int create(std::vector<int> parts) {
        std::vector<int> verts;
        std::vector<Edge> seeds;
        for (int p : parts) {
            CliqueEntry& ent = coll.entries[p];
            ent.alive = false;
            verts.insert(verts.end(), ent.verts.begin(), ent.verts.end());
            seeds.insert(seeds.end(), ent.seeds.begin(), ent.seeds.end());
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        std::sort(seeds.begin(), seeds.end());
        int id = int(coll.entries.size());
        for (int v : verts) inc[v].push_back(id);
        coll.entries.push_back({std::move(verts), std::move(seeds), true});
        cnt.push_back(0);
        coll.history.push_back({parts.size() == 2 ? MergeEvent::Kind::pair
                                                  : MergeEvent::Kind::triple,
                                std::move(parts), id,
                                int(coll.entries[id].verts.size())});
        work.push_back(id);
        return id;
    }

    // smallest alive id sharing >= 2 vertices with x, or -1
    int pair_partner(int x) {
        int best = -1;
        std::vector<int> touched;
        for (int v : coll.entries[x].verts) {
            std::vector<int>& lst = inc[v];
            size_t w = 0;
            for (int id : lst) {
                if (!alive(id)) continue;
                lst[w++] = id;
                if (id == x) continue;
                if (cnt[id]++ == 0) touched.push_back(id);
                if (cnt[id] == 2 && (best < 0 || id < best)) best = id;
            }
            lst.resize(w);
        }
        for (int id : touched) cnt[id] = 0;
        return best;
    }

    void drain_pairs() {
        while (!work.empty()) {
            int x = work.front();
            work.pop_front();
            if (!alive(x)) continue;
            int p = pair_partner(x);
            if (p >= 0) create({std::min(x, p), std::max(x, p)});
        }
    }

    // three alive cliques pairwise meeting at three distinct vertices;
    // only valid when no alive pair shares >= 2 vertices
    bool triple_step() {
        std::vector<int> stamp(std::size_t(n), -1); // vertex -> entry id
        for (int u = 0; u < n; ++u) {
            std::vector<int> at_u;
            for (int id : inc[u])
                if (alive(id)) at_u.push_back(id);
            for (size_t i = 0; i < at_u.size(); ++i) {
                int a = at_u[i];
                for (size_t j = i + 1; j < at_u.size(); ++j) {
                    int b = at_u[j];
                    for (int v : coll.entries[b].verts) stamp[v] = b;
                    for (int x : coll.entries[a].verts) {
                        if (x == u) continue;
                        for (int c : inc[x]) {
                            if (!alive(c) || c == a || c == b) continue;
                            for (int v : coll.entries[c].verts) {
                                if (v == u || v == x) continue;
                                if (stamp[v] == b) {
                                    std::vector<int> parts = {a, b, c};
                                    std::sort(parts.begin(), parts.end());
                                    create(std::move(parts));
                                    return true;
                                }
                            }
                        }
                    }
                }
            }
        }
        return false;
    }

    void operator()() {
        for (;;) {
            drain_pairs();
            if (!triple_step()) return;
        }
    }
};

} // namespace

CliqueCollection clique_process(const SimpleGraph& g) {
    if (g.vertex_count() > 1024)
        throw size_limit_error("clique_process: vertex count exceeds 1024");
    ProcessState st(g);
    st();
    return std::move(st.coll);
}

SimpleGraph k4_closure_via_cliques(const SimpleGraph& g) {
    CliqueCollection coll = clique_process(g);
    SimpleGraph out(g.vertex_count());
    for (const CliqueEntry& ent : coll.entries) {
        if (!ent.alive) continue;
        for (size_t i = 0; i < ent.verts.size(); ++i)
            for (size_t j = i + 1; j < ent.verts.size(); ++j)
                out.add_edge(ent.verts[i], ent.verts[j]);
    }
    return out;
}

std::vector<int> internally_spanned_sizes(const CliqueCollection& c) {
    std::vector<int> out;
    out.reserve(c.entries.size());
    for (const CliqueEntry& ent : c.entries) out.push_back(int(ent.verts.size()));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<int>> al_scan(const CliqueCollection& c, int L) {
    if (L < 1) throw input_error("al_scan: L must be positive");
    for (const CliqueEntry& ent : c.entries) {
        int s = int(ent.verts.size());
        if (s >= L && s <= 3 * L) return ent.verts;
    }
    return std::nullopt;
}

} // namespace gbp
