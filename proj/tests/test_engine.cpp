#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "gbp/engine.hpp"
#include "gbp/errors.hpp"
#include "gbp/graph.hpp"
#include "gbp/pattern.hpp"

using namespace gbp;

namespace {

// reference engine: every round, rescan every non-edge against every
// injective placement of the pattern; infect when some copy misses only
// that edge
struct NaiveResult {
    SimpleGraph closure{0};
    std::vector<std::vector<Edge>> rounds;
};

void all_maps(const SimpleGraph& g, int hv, std::vector<int>& phi,
              std::vector<bool>& used,
              const std::function<void(const std::vector<int>&)>& sink) {
    if (int(phi.size()) == hv) {
        sink(phi);
        return;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (used[std::size_t(v)]) continue;
        used[std::size_t(v)] = true;
        phi.push_back(v);
        all_maps(g, hv, phi, used, sink);
        phi.pop_back();
        used[std::size_t(v)] = false;
    }
}

NaiveResult naive_close(const SimpleGraph& g0, const SimpleGraph& H) {
    NaiveResult res;
    SimpleGraph g = g0;
    std::vector<Edge> hedges = H.edges();
    for (;;) {
        std::set<Edge> next;
        std::vector<int> phi;
        std::vector<bool> used(std::size_t(g.vertex_count()), false);
        all_maps(g, H.vertex_count(), phi, used, [&](const std::vector<int>& m) {
            std::optional<Edge> missing;
            int miss = 0;
            for (const Edge& he : hedges) {
                Edge im(m[std::size_t(he.u)], m[std::size_t(he.v)]);
                if (!g.has_edge(im)) {
                    ++miss;
                    if (miss > 1) return;
                    missing = im;
                }
            }
            if (miss == 1) next.insert(*missing);
        });
        if (next.empty()) break;
        res.rounds.emplace_back(next.begin(), next.end());
        for (const Edge& e : next) g.add_edge(e);
    }
    res.closure = std::move(g);
    return res;
}

std::vector<Edge> round_edges(const std::vector<InfectionEvent>& events) {
    std::vector<Edge> out;
    for (const InfectionEvent& ev : events) out.push_back(ev.edge);
    return out;
}

// smallest valid witness tuple by scanning every placement at the recorded
// pre-round state
std::optional<std::vector<int>> brute_witness(const SimpleGraph& gprev,
                                              const SimpleGraph& H, Edge e) {
    std::optional<std::vector<int>> best;
    std::vector<Edge> hedges = H.edges();
    std::vector<int> phi;
    std::vector<bool> used(std::size_t(gprev.vertex_count()), false);
    all_maps(gprev, H.vertex_count(), phi, used, [&](const std::vector<int>& m) {
        bool hit = false;
        for (const Edge& he : hedges) {
            Edge im(m[std::size_t(he.u)], m[std::size_t(he.v)]);
            if (im == e) hit = true;
            else if (!gprev.has_edge(im)) return;
        }
        if (!hit) return;
        std::vector<int> t = m;
        std::sort(t.begin(), t.end());
        if (!best || t < *best) best = std::move(t);
    });
    return best;
}

void check_against_naive(const SimpleGraph& g, const SimpleGraph& Hbase,
                         const std::pair<SimpleGraph, InfectionTrace>& got,
                         bool check_witnesses) {
    NaiveResult want = naive_close(g, Hbase);
    CHECK(got.first == want.closure);
    REQUIRE(got.second.rounds.size() == want.rounds.size());
    SimpleGraph cur = g;
    for (std::size_t t = 0; t < want.rounds.size(); ++t) {
        CHECK(round_edges(got.second.rounds[t]) == want.rounds[t]);
        if (check_witnesses) {
            for (const InfectionEvent& ev : got.second.rounds[t]) {
                auto best = brute_witness(cur, Hbase, ev.edge);
                REQUIRE(best.has_value());
                CHECK(ev.witness == *best);
            }
        }
        for (const Edge& e : want.rounds[t]) cur.add_edge(e);
    }
}

} // namespace

TEST_CASE("K_4 minus an edge closes in one round") {
    SimpleGraph g = complete_graph(4);
    g.remove_edge(1, 3);
    auto [cl, tr] = close_kr(g, 4);
    CHECK(cl.is_complete());
    REQUIRE(tr.rounds.size() == 1);
    REQUIRE(tr.rounds[0].size() == 1);
    CHECK(tr.rounds[0][0].edge == Edge(1, 3));
    CHECK(tr.rounds[0][0].witness == std::vector<int>{0, 1, 2, 3});
    CHECK(infection_round(tr, Edge(1, 3)) == 1);
    CHECK(infection_round(tr, Edge(0, 1)) == 0);
}

TEST_CASE("clique engine matches the naive engine round-for-round") {
    for (int r : {3, 4, 5}) {
        SimpleGraph H = complete_graph(r);
        for (int n : {7, 9}) {
            for (double p : {0.2, 0.4, 0.6}) {
                for (std::uint64_t s = 0; s < 8; ++s) {
                    SimpleGraph g =
                        erdos_renyi(n, p, 10000 * std::uint64_t(r) + s);
                    check_against_naive(g, H, close_kr(g, r), true);
                }
            }
        }
    }
}

TEST_CASE("generic engine matches the naive engine on clique patterns") {
    for (int r : {3, 4, 5}) {
        PatternGraph H = named_pattern("K" + std::to_string(r));
        for (double p : {0.3, 0.5}) {
            for (std::uint64_t s = 0; s < 6; ++s) {
                SimpleGraph g = erdos_renyi(8, p, 500 * std::uint64_t(r) + s);
                check_against_naive(g, H.base(), close_generic(g, H), true);
            }
        }
    }
}

TEST_CASE("generic engine equals clique engine including witnesses") {
    for (int r : {3, 4, 5}) {
        PatternGraph H = named_pattern("K" + std::to_string(r));
        for (std::uint64_t s = 0; s < 10; ++s) {
            SimpleGraph g = erdos_renyi(11, 0.35 + 0.05 * double(r), 77 * std::uint64_t(r) + s);
            auto a = close_kr(g, r);
            auto b = close_generic(g, H);
            CHECK(a.first == b.first);
            REQUIRE(a.second.rounds.size() == b.second.rounds.size());
            for (std::size_t t = 0; t < a.second.rounds.size(); ++t) {
                REQUIRE(a.second.rounds[t].size() == b.second.rounds[t].size());
                for (std::size_t i = 0; i < a.second.rounds[t].size(); ++i) {
                    CHECK(a.second.rounds[t][i].edge == b.second.rounds[t][i].edge);
                    CHECK(a.second.rounds[t][i].witness ==
                          b.second.rounds[t][i].witness);
                }
            }
        }
    }
}

TEST_CASE("generic engine matches the naive engine on sparse patterns") {
    for (const char* name : {"C4", "K2,3", "K1,3"}) {
        PatternGraph H = named_pattern(name);
        for (double p : {0.25, 0.45, 0.65}) {
            for (std::uint64_t s = 0; s < 6; ++s) {
                SimpleGraph g =
                    erdos_renyi(8, p, std::uint64_t(p * 1000) * 31 + s);
                check_against_naive(g, H.base(), close_generic(g, H), true);
            }
        }
    }
}

TEST_CASE("K_3 closure completes exactly the connected components") {
    for (std::uint64_t s = 0; s < 12; ++s) {
        SimpleGraph g = erdos_renyi(40, 0.05, 600 + s);
        auto [cl, tr] = close_kr(g, 3);
        // component labels via naive flood fill
        std::vector<int> comp(40, -1);
        int nc = 0;
        for (int v = 0; v < 40; ++v) {
            if (comp[std::size_t(v)] >= 0) continue;
            std::vector<int> stack{v};
            comp[std::size_t(v)] = nc;
            while (!stack.empty()) {
                int a = stack.back();
                stack.pop_back();
                for (int b = 0; b < 40; ++b)
                    if (g.has_edge(a, b) && comp[std::size_t(b)] < 0) {
                        comp[std::size_t(b)] = nc;
                        stack.push_back(b);
                    }
            }
            ++nc;
        }
        for (int u = 0; u < 40; ++u)
            for (int v = u + 1; v < 40; ++v)
                CHECK(cl.has_edge(u, v) ==
                      (comp[std::size_t(u)] == comp[std::size_t(v)]));
    }
}

TEST_CASE("percolation routing agrees with the exact engine across the K_3 boundary") {
    for (int n : {250, 256, 257, 300}) {
        for (double p : {0.015, 0.03}) {
            std::uint64_t seeds = n < 300 ? 3 : 2;
            for (std::uint64_t s = 0; s < seeds; ++s) {
                SimpleGraph g = erdos_renyi(n, p, 9000 + std::uint64_t(n) + s);
                bool fast = percolates(g, 3);
                CHECK(fast == is_connected(g));
                CHECK(fast == close_kr(g, 3).first.is_complete());
            }
        }
    }
}

TEST_CASE("percolation routing agrees with the exact engine across the K_4 boundary") {
    for (int n : {100, 128, 129, 160, 220}) {
        double base = 1.0 / std::sqrt(double(n) * std::log(double(n)));
        for (double f : {0.5, 1.0, 2.0, 6.0}) {
            for (std::uint64_t s = 0; s < 3; ++s) {
                SimpleGraph g =
                    erdos_renyi(n, std::min(1.0, f * base), 40000 + std::uint64_t(n) * 17 + s);
                CHECK(percolates(g, 4) == close_kr(g, 4).first.is_complete());
            }
        }
    }
}

TEST_CASE("generic percolation routing matches engine results") {
    PatternGraph k4 = named_pattern("K4");
    for (std::uint64_t s = 0; s < 10; ++s) {
        SimpleGraph g = erdos_renyi(30, 0.25, 1234 + s);
        CHECK(percolates(g, k4) == percolates(g, 4));
    }
    PatternGraph c4 = named_pattern("C4");
    for (std::uint64_t s = 0; s < 6; ++s) {
        SimpleGraph g = erdos_renyi(12, 0.3, 4321 + s);
        CHECK(percolates(g, c4) == close_generic(g, c4).first.is_complete());
    }
}

TEST_CASE("cycle plus isolated vertex is a fixed point under K_2,3") {
    SimpleGraph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(0, 3);
    PatternGraph H = named_pattern("K2,3");
    auto [cl, tr] = close_generic(g, H);
    CHECK(cl == g);
    CHECK(tr.rounds.empty());
}

TEST_CASE("single-edge pattern floods in one round") {
    SimpleGraph g(5);
    g.add_edge(0, 1);
    PatternGraph H = named_pattern("K2");
    auto [cl, tr] = close_generic(g, H);
    CHECK(cl.is_complete());
    REQUIRE(tr.rounds.size() == 1);
    CHECK(tr.rounds[0].size() == 9);
    CHECK(tr.rounds[0][0].witness.size() == 2);
    CHECK(percolates(g, H));
    // the single-edge copy needs no present edges, so even the empty graph
    // floods
    CHECK(percolates(SimpleGraph(4), H));
}

TEST_CASE("closure is a fixed point of the engine") {
    for (std::uint64_t s = 0; s < 6; ++s) {
        SimpleGraph g = erdos_renyi(12, 0.3, 80 + s);
        auto [cl, tr] = close_kr(g, 4);
        auto [cl2, tr2] = close_kr(cl, 4);
        CHECK(cl2 == cl);
        CHECK(tr2.rounds.empty());
    }
}

TEST_CASE("gadget roots are infected in round exactly d") {
    for (int d : {1, 2, 3}) {
        GadgetResult res = build_gadget(named_pattern("K4"), d);
        auto [cl, tr] = close_kr(res.graph, 4);
        CHECK(infection_round(tr, res.root) == d);
    }
    GadgetResult k52 = build_gadget(named_pattern("K5"), 2);
    auto [cl5, tr5] = close_kr(k52.graph, 5);
    CHECK(infection_round(tr5, k52.root) == 2);
}

TEST_CASE("engine input contracts") {
    SimpleGraph g(5);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(close_kr(g, 2), input_error);
    CHECK_THROWS_AS(percolates(g, 2), input_error);
    CHECK_THROWS_AS(close_kr(SimpleGraph(4097), 5), size_limit_error);
    CHECK_THROWS_AS(close_generic(SimpleGraph(4097), named_pattern("C4")),
                    size_limit_error);
    CHECK(percolates(complete_graph(3), 4)); // already complete
    CHECK(!percolates(SimpleGraph(3), 4));
    SimpleGraph h(3);
    h.add_edge(0, 1);
    CHECK(!percolates(h, 5)); // not complete and n < r
}

TEST_CASE("K_4 scale engine matches exact closure at n = 500") {
    // p swept through the critical window so both phases and the marginal
    // regime are exercised on the streaming merge path
    int n = 500;
    double base = 1.0 / std::sqrt(n * std::log(double(n)));
    for (double f : {0.6, 1.0, 1.6, 3.0}) {
        SimpleGraph g = erdos_renyi(n, f * base, 977 + std::uint64_t(f * 10));
        bool fast = percolates(g, 4);
        bool exact = close_kr(g, 4).first.is_complete();
        CHECK(fast == exact);
    }
}
