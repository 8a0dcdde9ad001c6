#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "gbp/bitset.hpp"
#include "gbp/errors.hpp"
#include "gbp/graph.hpp"
#include "gbp/rational.hpp"
#include "gbp/rng.hpp"

using namespace gbp;

TEST_CASE("edge normalizes endpoint order") {
    Edge e(3, 1);
    CHECK(e.u == 1);
    CHECK(e.v == 3);
    CHECK(Edge(1, 3) == e);
    CHECK(Edge(0, 1) < Edge(0, 2));
    CHECK(Edge(0, 2) < Edge(1, 2));
}

TEST_CASE("bitset primitives") {
    Bitset a(130), b(130);
    a.set(0);
    a.set(64);
    a.set(129);
    b.set(64);
    CHECK(a.count() == 3);
    CHECK(b.is_subset_of(a));
    CHECK(!a.is_subset_of(b));
    CHECK(a.intersects(b));
    CHECK(a.count_and(b) == 1);
    CHECK(a.find_first() == 0);

    std::vector<std::size_t> seen;
    a.for_each([&](std::size_t i) { seen.push_back(i); });
    CHECK(seen == std::vector<std::size_t>{0, 64, 129});

    Bitset c = a;
    c.reset_below(64);
    CHECK(c.count() == 2);
    CHECK(!c.test(0));
    CHECK(c.test(64));

    Bitset d = a & b;
    CHECK(d.count() == 1);
    d = a | b;
    CHECK(d.count() == 3);
    d.subtract(b);
    CHECK(d.count() == 2);
    CHECK(!d.test(64));
}

TEST_CASE("rational arithmetic and ordering") {
    Rational a(10, 4);
    CHECK(a.num == 5);
    CHECK(a.den == 2);
    CHECK(a.to_string() == "5/2");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(2, 1) == Rational(4, 2));
    CHECK(Rational(-1, 2).num == -1);
    CHECK(Rational(1, -2).num == -1);
    CHECK(Rational(1, -2).den == 2);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("edge list parsing") {
    SimpleGraph g = graph_from_edge_list("0 1\n1 2");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK(!g.has_edge(0, 2));

    SimpleGraph h = graph_from_edge_list("n=5\n0 1");
    CHECK(h.vertex_count() == 5);
    CHECK(h.edge_count() == 1);
    CHECK(h.degree(4) == 0);

    SimpleGraph d = graph_from_edge_list("0 1\n1 0");
    CHECK(d.vertex_count() == 2);
    CHECK(d.edge_count() == 1);

    SimpleGraph c = graph_from_edge_list("# comment\n0 1\n\n2 3\n");
    CHECK(c.vertex_count() == 4);
    CHECK(c.edge_count() == 2);
}

TEST_CASE("edge list parse errors") {
    CHECK_THROWS_AS(graph_from_edge_list("1 1"), input_error);
    CHECK_THROWS_AS(graph_from_edge_list("-1 2"), input_error);
    CHECK_THROWS_AS(graph_from_edge_list("0 1 2"), input_error);
    CHECK_THROWS_AS(graph_from_edge_list("a b"), input_error);
    CHECK_THROWS_AS(graph_from_edge_list("n=2\n0 5"), input_error);
    CHECK_THROWS_AS(graph_from_edge_list("0"), input_error);
}

TEST_CASE("serialize round-trip") {
    SimpleGraph g(6);
    g.add_edge(4, 0);
    g.add_edge(1, 2);
    std::string text = serialize(g);
    CHECK(text == "n=6\n0 4\n1 2\n");
    SimpleGraph back = graph_from_edge_list(text);
    CHECK(back == g);
}

TEST_CASE("graph mutation contracts") {
    SimpleGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    CHECK(g.edge_count() == 1);
    g.remove_edge(0, 1);
    CHECK(g.edge_count() == 0);
    CHECK_THROWS_AS(g.add_edge(2, 2), input_error);
    CHECK_THROWS_AS(g.add_edge(0, 4), input_error);
    CHECK(complete_graph(5).is_complete());
    CHECK(complete_graph(5).edge_count() == 10);
}

TEST_CASE("erdos_renyi determinism and endpoints") {
    SimpleGraph a = erdos_renyi(40, 0.35, 7);
    SimpleGraph b = erdos_renyi(40, 0.35, 7);
    CHECK(a == b);
    SimpleGraph c = erdos_renyi(40, 0.35, 8);
    CHECK(!(a == c));

    CHECK(erdos_renyi(10, 0.0, 1).edge_count() == 0);
    CHECK(erdos_renyi(10, 1.0, 1).is_complete());
    CHECK_THROWS_AS(erdos_renyi(10, -0.1, 1), input_error);
    CHECK_THROWS_AS(erdos_renyi(10, 1.1, 1), input_error);
    CHECK_THROWS_AS(erdos_renyi(1, 0.5, 1), input_error);
}

TEST_CASE("erdos_renyi edge-count mean, dense sampler") {
    // 100 samples at n=400, p=0.3: mean 23940, sample-mean sd ~ 13
    double total = 0;
    for (std::uint64_t s = 0; s < 100; ++s)
        total += double(erdos_renyi(400, 0.3, s).edge_count());
    double mean = total / 100.0;
    CHECK(std::abs(mean - 23940.0) < 400.0);
}

TEST_CASE("erdos_renyi edge-count mean, sparse sampler") {
    // n > 4096 switches to geometric skip sampling
    SimpleGraph g = erdos_renyi(6000, 0.001, 42);
    CHECK(g == erdos_renyi(6000, 0.001, 42));
    double expect = 0.001 * double(g.max_edges());
    double sd = std::sqrt(expect);
    CHECK(std::abs(double(g.edge_count()) - expect) < 6.0 * sd);

    double total = 0;
    for (std::uint64_t s = 0; s < 20; ++s)
        total += double(erdos_renyi(6000, 0.001, s).edge_count());
    CHECK(std::abs(total / 20.0 - expect) < 3.0 * sd);
}

TEST_CASE("edge coupling: lower p yields a subgraph, dense sampler") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        SimpleGraph lo = erdos_renyi(60, 0.2, s);
        SimpleGraph hi = erdos_renyi(60, 0.5, s);
        for (const Edge& e : lo.edges()) CHECK(hi.has_edge(e));
    }
}

TEST_CASE("is_connected") {
    SimpleGraph p(4);
    p.add_edge(0, 1);
    p.add_edge(1, 2);
    p.add_edge(2, 3);
    CHECK(is_connected(p));
    p.remove_edge(1, 2);
    CHECK(!is_connected(p));
    CHECK(is_connected(SimpleGraph(1)));
    CHECK(!is_connected(SimpleGraph(2)));
}

TEST_CASE("common_neighbors") {
    SimpleGraph g = complete_graph(4);
    g.remove_edge(2, 3);
    Bitset cn = common_neighbors(g, 2, 3);
    CHECK(cn.count() == 2);
    CHECK(cn.test(0));
    CHECK(cn.test(1));
}

namespace {

bool clique_brute(const SimpleGraph& g, const Bitset& s, int k) {
    std::vector<int> verts = s.to_vector();
    int n = int(verts.size());
    if (k <= 0) return true;
    if (k > n) return false;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[std::size_t(i)] = i;
    for (;;) {
        bool ok = true;
        for (int i = 0; ok && i < k; ++i)
            for (int j = i + 1; ok && j < k; ++j)
                if (!g.has_edge(verts[std::size_t(idx[std::size_t(i)])],
                                verts[std::size_t(idx[std::size_t(j)])]))
                    ok = false;
        if (ok) return true;
        int i = k - 1;
        while (i >= 0 && idx[std::size_t(i)] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[std::size_t(i)];
        for (int j = i + 1; j < k; ++j)
            idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
    }
}

} // namespace

TEST_CASE("has_clique_in agrees with exhaustive search") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        SimpleGraph g = erdos_renyi(10, 0.5, 1000 + s);
        Bitset all(10);
        for (int v = 0; v < 10; ++v)
            if (v % 3 != int(s % 3)) all.set(std::size_t(v));
        for (int k = 0; k <= 6; ++k)
            CHECK(has_clique_in(g, all, k) == clique_brute(g, all, k));
    }
}
