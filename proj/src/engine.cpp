#include "gbp/engine.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

#include "gbp/errors.hpp"

namespace gbp {

namespace {

std::uint64_t edge_key(Edge e) { return (std::uint64_t(std::uint32_t(e.u)) << 32) | std::uint32_t(e.v); }

} // namespace

void InfectionTrace::index_edge(Edge e, int round) { round_of_[edge_key(e)] = round; }

std::optional<int> InfectionTrace::infection_round(Edge e) const {
    auto it = round_of_.find(edge_key(e));
    if (it == round_of_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> infection_round(const InfectionTrace& t, Edge e) { return t.infection_round(e); }

// ---------------------------------------------------------------------------
// K_r engine.
//
// Completions are generated from the edges of the previous round: any fresh
// copy of K_r must use at least one of them.  For a round-t edge (a,b) with
// S = N(a) & N(b) the missing pair is either inside S (needs an (r-4)-clique
// in S & N(u) & N(v)) or touches an endpoint (missing (a,u) needs an
// (r-3)-clique in S & N(u)).

namespace {

// lexicographically first k-subset of cands forming a clique; cands ascending
bool first_clique(const SimpleGraph& g, Bitset cands, int need, std::vector<int>& acc) {
    if (need == 0) return true;
    while (cands.count() >= std::size_t(need)) {
        int v = cands.find_first();
        cands.reset(std::size_t(v));
        acc.push_back(v);
        Bitset next = cands;
        next &= g.neighbors(v);
        next.reset_below(std::size_t(v) + 1);
        if (first_clique(g, next, need - 1, acc)) return true;
        acc.pop_back();
    }
    return false;
}

std::vector<int> kr_witness(const SimpleGraph& g, Edge e, int r) {
    Bitset s = g.neighbors(e.u) & g.neighbors(e.v);
    std::vector<int> clique;
    bool ok = first_clique(g, s, r - 2, clique);
    assert(ok);
    (void)ok;
    clique.push_back(e.u);
    clique.push_back(e.v);
    std::sort(clique.begin(), clique.end());
    return clique;
}

std::pair<SimpleGraph, InfectionTrace> close_kr_impl(const SimpleGraph& g, int r, bool record) {
    if (r < 3) throw input_error("close_kr needs r >= 3");
    int n = g.vertex_count();
    if (n > 4096) throw size_limit_error("close_kr capped at n=4096");

    SimpleGraph G = g;
    InfectionTrace trace;
    trace.initial = g.edges();
    for (const Edge& e : trace.initial) trace.index_edge(e, 0);

    std::vector<Edge> fresh = trace.initial;
    while (!fresh.empty()) {
        std::set<Edge> cands;
        for (const Edge& e : fresh) {
            Bitset s = G.neighbors(e.u) & G.neighbors(e.v);
            if (r == 4 && s.count() >= 2) {
                // missing pair inside S: enumerate non-neighbours directly
                s.for_each([&](int u) {
                    Bitset t = s;
                    t.subtract(G.neighbors(u));
                    t.reset_below(std::size_t(u) + 1);
                    t.for_each([&](int v) { cands.insert(Edge(u, v)); });
                });
            } else if (r >= 5 && s.count() >= 2) {
                std::vector<int> sv = s.to_vector();
                for (std::size_t i = 0; i < sv.size(); ++i)
                    for (std::size_t j = i + 1; j < sv.size(); ++j) {
                        int u = sv[i], v = sv[j];
                        if (G.has_edge(u, v) || cands.count(Edge(u, v))) continue;
                        Bitset t = s;
                        t &= G.neighbors(u);
                        t &= G.neighbors(v);
                        bool ok = r == 5 ? t.any() : has_clique_in(G, t, r - 4);
                        if (ok) cands.insert(Edge(u, v));
                    }
            }
            for (int side = 0; side < 2; ++side) {
                int keep = side ? e.v : e.u;
                int other = side ? e.u : e.v;
                G.neighbors(other).for_each([&](int u) {
                    if (u == keep || G.has_edge(keep, u) || cands.count(Edge(keep, u))) return;
                    bool ok;
                    if (r == 3) {
                        ok = true;
                    } else {
                        Bitset t = s;
                        t &= G.neighbors(u);
                        ok = r == 4 ? t.any() : has_clique_in(G, t, r - 3);
                    }
                    if (ok) cands.insert(Edge(keep, u));
                });
            }
        }
        if (cands.empty()) break;
        int round = int(trace.rounds.size()) + 1;
        if (record) {
            std::vector<InfectionEvent> events;
            events.reserve(cands.size());
            for (const Edge& c : cands) events.push_back(InfectionEvent{c, kr_witness(G, c, r)});
            trace.rounds.push_back(std::move(events));
        } else {
            trace.rounds.emplace_back();
        }
        fresh.assign(cands.begin(), cands.end());
        for (const Edge& c : fresh) {
            G.add_edge(c);
            trace.index_edge(c, round);
        }
    }
    return {std::move(G), std::move(trace)};
}

} // namespace

std::pair<SimpleGraph, InfectionTrace> close_kr(const SimpleGraph& g, int r) {
    return close_kr_impl(g, r, true);
}

// ---------------------------------------------------------------------------
// generic engine: anchored backtracking over completion templates

namespace {

struct SearchStep {
    int tvert;
    std::vector<int> earlier; // already-placed template neighbours
};

// placement order for one template with two pre-pinned vertices
struct SearchPlan {
    int pin0 = -1, pin1 = -1;
    std::vector<SearchStep> steps;
    int free_count = 0; // isolated, unpinned, not forced: existence check only
};

SearchPlan build_plan(const SimpleGraph& T, int pin0, int pin1, int force0, int force1) {
    SearchPlan plan;
    plan.pin0 = pin0;
    plan.pin1 = pin1;
    int hv = T.vertex_count();
    std::vector<bool> placed(std::size_t(hv), false);
    placed[std::size_t(pin0)] = placed[std::size_t(pin1)] = true;
    int remaining = hv - 2;
    while (remaining > 0) {
        int best = -1, best_links = -1;
        for (int x = 0; x < hv; ++x) {
            if (placed[std::size_t(x)]) continue;
            int links = 0;
            T.neighbors(x).for_each([&](int w) { links += placed[std::size_t(w)] ? 1 : 0; });
            if (links > best_links) {
                best = x;
                best_links = links;
            }
        }
        if (best_links == 0 && T.degree(best) == 0) {
            // isolated vertices: place only when they carry the candidate edge
            int iso_forced = -1;
            for (int x = 0; x < hv && iso_forced < 0; ++x)
                if (!placed[std::size_t(x)] && T.degree(x) == 0 && (x == force0 || x == force1))
                    iso_forced = x;
            if (iso_forced < 0) {
                for (int x = 0; x < hv; ++x)
                    if (!placed[std::size_t(x)] && T.degree(x) == 0) {
                        placed[std::size_t(x)] = true;
                        ++plan.free_count;
                        --remaining;
                    }
                continue;
            }
            best = iso_forced;
        }
        SearchStep step;
        step.tvert = best;
        T.neighbors(best).for_each([&](int w) {
            if (placed[std::size_t(w)]) step.earlier.push_back(w);
        });
        plan.steps.push_back(std::move(step));
        placed[std::size_t(best)] = true;
        --remaining;
    }
    return plan;
}

// enumerate injective template embeddings into G; phi indexed by template label
template <class F>
void run_plan_rec(const SimpleGraph& G, const SearchPlan& plan, std::size_t depth,
                  std::vector<int>& phi, Bitset& used, F&& leaf) {
    int n = G.vertex_count();
    if (depth == plan.steps.size()) {
        if (n - int(used.count()) >= plan.free_count) leaf(phi);
        return;
    }
    const SearchStep& st = plan.steps[depth];
    auto place = [&](int c) {
        used.set(std::size_t(c));
        phi[std::size_t(st.tvert)] = c;
        run_plan_rec(G, plan, depth + 1, phi, used, leaf);
        phi[std::size_t(st.tvert)] = -1;
        used.reset(std::size_t(c));
    };
    if (st.earlier.empty()) {
        for (int c = 0; c < n; ++c)
            if (!used.test(std::size_t(c))) place(c);
        return;
    }
    Bitset cand = G.neighbors(phi[std::size_t(st.earlier[0])]);
    for (std::size_t i = 1; i < st.earlier.size(); ++i) cand &= G.neighbors(phi[std::size_t(st.earlier[i])]);
    cand.subtract(used);
    cand.for_each(place);
}

template <class F>
void run_plan(const SimpleGraph& G, const SearchPlan& plan, int img0, int img1, F&& leaf) {
    if (img0 == img1) return;
    int hv = int(plan.steps.size()) + 2 + plan.free_count;
    std::vector<int> phi(std::size_t(hv), -1);
    Bitset used((std::size_t(G.vertex_count())));
    phi[std::size_t(plan.pin0)] = img0;
    phi[std::size_t(plan.pin1)] = img1;
    used.set(std::size_t(img0));
    used.set(std::size_t(img1));
    run_plan_rec(G, plan, 0, phi, used, leaf);
}

struct GenericEngine {
    const PatternGraph& H;
    // per completion, per directed template edge: a generation plan
    std::vector<std::vector<std::pair<Edge, SearchPlan>>> gen_plans;
    std::vector<SearchPlan> witness_plans; // pinned at the anchors

    explicit GenericEngine(const PatternGraph& h) : H(h) {
        for (const auto& c : H.completions()) {
            std::vector<std::pair<Edge, SearchPlan>> plans;
            for (const Edge& te : c.tmpl.edges()) {
                plans.emplace_back(te, build_plan(c.tmpl, te.u, te.v, c.removed.u, c.removed.v));
                plans.emplace_back(Edge(te.u, te.v), SearchPlan{});
                plans.back().first = te;
                plans.back().second = build_plan(c.tmpl, te.v, te.u, c.removed.u, c.removed.v);
            }
            gen_plans.push_back(std::move(plans));
            witness_plans.push_back(build_plan(c.tmpl, c.removed.u, c.removed.v, -1, -1));
        }
    }

    void generate(const SimpleGraph& G, Edge e, std::set<Edge>& cands) const {
        for (std::size_t ci = 0; ci < gen_plans.size(); ++ci) {
            const Edge anchor = H.completions()[ci].removed;
            for (std::size_t pi = 0; pi < gen_plans[ci].size(); ++pi) {
                const auto& [te, plan] = gen_plans[ci][pi];
                // the two plans per template edge pin opposite orientations,
                // so the image pair stays in edge order
                int img0 = e.u, img1 = e.v;
                (void)te;
                run_plan(G, plan, img0, img1, [&](const std::vector<int>& phi) {
                    int au = phi[std::size_t(anchor.u)], av = phi[std::size_t(anchor.v)];
                    if (au < 0 || av < 0) return; // anchor left free: no concrete pair
                    Edge cand(au, av);
                    if (!G.has_edge(cand)) cands.insert(cand);
                });
            }
        }
    }

    std::vector<int> witness(const SimpleGraph& G, Edge cand) const {
        std::vector<int> best;
        for (std::size_t ci = 0; ci < witness_plans.size(); ++ci) {
            const SearchPlan& plan = witness_plans[ci];
            for (int flip = 0; flip < 2; ++flip) {
                int img0 = flip ? cand.v : cand.u;
                int img1 = flip ? cand.u : cand.v;
                run_plan(G, plan, img0, img1, [&](const std::vector<int>& phi) {
                    std::vector<int> tuple;
                    tuple.reserve(phi.size());
                    Bitset used((std::size_t(G.vertex_count())));
                    int missing = 0;
                    for (int x : phi)
                        if (x >= 0) {
                            tuple.push_back(x);
                            used.set(std::size_t(x));
                        } else {
                            ++missing;
                        }
                    for (int c = 0; missing > 0; ++c)
                        if (!used.test(std::size_t(c))) {
                            tuple.push_back(c);
                            --missing;
                        }
                    std::sort(tuple.begin(), tuple.end());
                    if (best.empty() || tuple < best) best = std::move(tuple);
                });
            }
        }
        assert(!best.empty());
        return best;
    }
};

std::pair<SimpleGraph, InfectionTrace> close_generic_impl(const SimpleGraph& g, const PatternGraph& H,
                                                          bool record) {
    if (H.vertex_count() > 8) throw size_limit_error("generic engine capped at v(H)=8");
    if (g.vertex_count() > 4096) throw size_limit_error("generic engine capped at n=4096");

    SimpleGraph G = g;
    InfectionTrace trace;
    trace.initial = g.edges();
    for (const Edge& e : trace.initial) trace.index_edge(e, 0);

    int n = g.vertex_count();
    if (H.edge_count() == 1) {
        // a single-edge pattern makes every non-edge a completed copy at once
        if (n >= H.vertex_count()) {
            std::vector<InfectionEvent> events;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    if (G.has_edge(u, v)) continue;
                    Edge e(u, v);
                    if (record) {
                        std::vector<int> w{u, v};
                        Bitset used((std::size_t(n)));
                        used.set(std::size_t(u));
                        used.set(std::size_t(v));
                        for (int c = 0; int(w.size()) < H.vertex_count(); ++c)
                            if (!used.test(std::size_t(c))) {
                                w.push_back(c);
                                used.set(std::size_t(c));
                            }
                        std::sort(w.begin(), w.end());
                        events.push_back(InfectionEvent{e, std::move(w)});
                    }
                    trace.index_edge(e, 1);
                }
            bool any = false;
            for (int u = 0; u < n && !any; ++u)
                for (int v = u + 1; v < n && !any; ++v) any = !G.has_edge(u, v);
            if (any) {
                if (record) {
                    trace.rounds.push_back(std::move(events));
                } else {
                    trace.rounds.emplace_back();
                }
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v) G.add_edge(u, v);
            }
        }
        return {std::move(G), std::move(trace)};
    }

    GenericEngine eng(H);
    std::vector<Edge> fresh = trace.initial;
    while (!fresh.empty()) {
        std::set<Edge> cands;
        for (const Edge& e : fresh) eng.generate(G, e, cands);
        if (cands.empty()) break;
        int round = int(trace.rounds.size()) + 1;
        if (record) {
            std::vector<InfectionEvent> events;
            events.reserve(cands.size());
            for (const Edge& c : cands) events.push_back(InfectionEvent{c, eng.witness(G, c)});
            trace.rounds.push_back(std::move(events));
        } else {
            trace.rounds.emplace_back();
        }
        fresh.assign(cands.begin(), cands.end());
        for (const Edge& c : fresh) {
            G.add_edge(c);
            trace.index_edge(c, round);
        }
    }
    return {std::move(G), std::move(trace)};
}

} // namespace

std::pair<SimpleGraph, InfectionTrace> close_generic(const SimpleGraph& g, const PatternGraph& H) {
    return close_generic_impl(g, H, true);
}

// ---------------------------------------------------------------------------
// percolation-only decisions

namespace {

// exact K_4 percolation at scale.  the K_4-closure is the union of complete
// graphs on the terminal sets of the clique merge process (two cliques
// sharing two vertices merge; three cliques pairwise meeting at three
// distinct vertices merge).  a merge among three single edges is exactly a
// triangle of g, so streaming the triangles once and saturating each
// resulting set covers every event: any later event involves a set built
// here and fires inside that set's own saturation.
struct K4Scale {
    const SimpleGraph& g;
    int n;
    std::vector<Bitset> mverts;        // merged sets, size >= 3, immutable once made
    std::vector<bool> alive;
    std::vector<std::vector<int>> inc; // vertex -> merged set ids, stale entries allowed
    std::vector<int> vcnt, vstamp;     // neighbours-inside-R counter, epoch-stamped
    std::vector<int> ccnt, cstamp;     // R-vertices-inside-set counter, epoch-stamped
    std::vector<int> cfirst;           // first shared vertex seen for a toucher
    std::vector<int> touchers;
    int epoch = 0;
    bool done = false;

    explicit K4Scale(const SimpleGraph& graph)
        : g(graph),
          n(graph.vertex_count()),
          inc(std::size_t(graph.vertex_count())),
          vcnt(std::size_t(graph.vertex_count()), 0),
          vstamp(std::size_t(graph.vertex_count()), -1) {}

    // the alive merged set containing both endpoints; unique because alive
    // sets pairwise share at most one vertex
    int owner(int u, int v) {
        auto& list = inc[std::size_t(u)];
        std::size_t keep = 0;
        int found = -1;
        for (std::size_t i = 0; i < list.size(); ++i) {
            int id = list[i];
            if (!alive[std::size_t(id)]) continue;
            list[keep++] = id;
            if (mverts[std::size_t(id)].test(std::size_t(v))) found = id;
        }
        list.resize(keep);
        return found;
    }

    // close R under 2-neighbour growth and merge events against alive sets
    void grow(Bitset R, std::vector<int> q) {
        ++epoch;
        touchers.clear();
        auto absorb = [&](int id) {
            alive[std::size_t(id)] = false;
            mverts[std::size_t(id)].for_each([&](int x) {
                if (!R.test(std::size_t(x))) {
                    R.set(std::size_t(x));
                    q.push_back(x);
                }
            });
        };
        while (true) {
            while (!q.empty()) {
                int x = q.back();
                q.pop_back();
                g.neighbors(x).for_each([&](int y) {
                    std::size_t yi(y);
                    if (R.test(yi)) return;
                    if (vstamp[yi] != epoch) {
                        vstamp[yi] = epoch;
                        vcnt[yi] = 0;
                    }
                    if (++vcnt[yi] == 2) {
                        R.set(yi);
                        q.push_back(y);
                    }
                });
                auto& list = inc[std::size_t(x)];
                std::size_t keep = 0;
                for (std::size_t i = 0; i < list.size(); ++i) {
                    int id = list[i];
                    if (!alive[std::size_t(id)]) continue;
                    list[keep++] = id;
                    std::size_t idi(id);
                    if (cstamp[idi] != epoch) {
                        cstamp[idi] = epoch;
                        ccnt[idi] = 0;
                        cfirst[idi] = x;
                        touchers.push_back(id);
                    }
                    if (++ccnt[idi] == 2) absorb(id);
                }
                list.resize(keep);
            }
            if (int(R.count()) == n) {
                done = true;
                return;
            }
            bool changed = false;
            // toucher A meets R at va only; an edge from A minus va into
            // R minus va closes a triple with that edge
            for (std::size_t i = 0; i < touchers.size(); ++i) {
                int A = touchers[i];
                if (!alive[std::size_t(A)]) continue;
                int va = cfirst[std::size_t(A)];
                Bitset rp = R;
                rp.reset(std::size_t(va));
                bool bridge = false;
                mverts[std::size_t(A)].for_each([&](int x) {
                    if (bridge || x == va) return;
                    if (g.neighbors(x).intersects(rp)) bridge = true;
                });
                if (bridge) {
                    absorb(A);
                    changed = true;
                }
            }
            // two touchers meeting R at distinct vertices and each other
            // anywhere close a triple with R
            if (!changed) {
                for (std::size_t i = 0; i + 1 < touchers.size() && !changed; ++i) {
                    int A = touchers[i];
                    if (!alive[std::size_t(A)]) continue;
                    for (std::size_t j = i + 1; j < touchers.size() && !changed; ++j) {
                        int B = touchers[j];
                        if (!alive[std::size_t(B)]) continue;
                        if (cfirst[std::size_t(A)] == cfirst[std::size_t(B)]) continue;
                        if (mverts[std::size_t(A)].intersects(mverts[std::size_t(B)])) {
                            absorb(A);
                            absorb(B);
                            changed = true;
                        }
                    }
                }
            }
            if (!changed) break;
        }
        int id = int(mverts.size());
        mverts.push_back(std::move(R));
        alive.push_back(true);
        ccnt.push_back(0);
        cstamp.push_back(-1);
        cfirst.push_back(-1);
        mverts.back().for_each([&](int x) { inc[std::size_t(x)].push_back(id); });
    }

    void handle_triangle(int u, int v, int w) {
        int ids[3] = {owner(u, v), owner(v, w), owner(u, w)};
        if (ids[0] >= 0 && ids[0] == ids[1] && ids[0] == ids[2]) return;
        Bitset R{std::size_t(n)};
        R.set(std::size_t(u));
        R.set(std::size_t(v));
        R.set(std::size_t(w));
        std::vector<int> q{u, v, w};
        for (int i = 0; i < 3; ++i) {
            int id = ids[i];
            if (id < 0 || !alive[std::size_t(id)]) continue;
            alive[std::size_t(id)] = false;
            mverts[std::size_t(id)].for_each([&](int x) {
                if (!R.test(std::size_t(x))) {
                    R.set(std::size_t(x));
                    q.push_back(x);
                }
            });
        }
        grow(std::move(R), std::move(q));
    }

    bool run() {
        Bitset common{std::size_t(n)};
        for (int u = 0; u < n && !done; ++u) {
            g.neighbors(u).for_each([&](int v) {
                if (done || v <= u) return;
                common = g.neighbors(u);
                common &= g.neighbors(v);
                common.for_each([&](int w) {
                    if (done || w <= v) return;
                    handle_triangle(u, v, w);
                });
            });
        }
        return done;
    }
};

} // namespace

bool percolates(const SimpleGraph& g, int r) {
    if (r < 3) throw input_error("percolates needs r >= 3");
    int n = g.vertex_count();
    if (g.is_complete()) return true;
    if (n < r) return false; // no copies of K_r fit: closure is g itself
    if (r == 3) {
        if (n <= 256) return close_kr_impl(g, 3, false).first.is_complete();
        return is_connected(g);
    }
    if (r == 4) {
        if (n <= 128) return close_kr_impl(g, 4, false).first.is_complete();
        K4Scale engine(g);
        return engine.run();
    }
    return close_kr_impl(g, r, false).first.is_complete();
}

bool percolates(const SimpleGraph& g, const PatternGraph& H) {
    if (H.is_complete() && H.vertex_count() >= 3) return percolates(g, H.vertex_count());
    if (g.is_complete()) return true;
    if (H.edge_count() == 1) return g.vertex_count() >= H.vertex_count();
    return close_generic_impl(g, H, false).first.is_complete();
}

} // namespace gbp
