#include "gbp/oracles.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

#include "gbp/engine.hpp"
#include "gbp/errors.hpp"
#include "gbp/graph.hpp"
#include "gbp/rng.hpp"

namespace gbp {

namespace {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
    return r;
}

bool next_combination(std::vector<int>& idx, int m) {
    int k = int(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < m - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::string edge_list_string(const std::vector<Edge>& edges) {
    std::ostringstream os;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) os << ' ';
        os << edges[i].u << '-' << edges[i].v;
    }
    return os.str();
}

int clamp_threads(int threads) { return std::max(1, std::min(threads, 16)); }

// enumerate all k-subsets of [0, m) for k in [kmin, kmax], calling
// visit(edge-index set) on ranks congruent to tid mod stride; the rank order
// is identical for every stride, so counterexample ranks are comparable
template <class F>
void scan_subsets(int m, int kmin, int kmax, int stride, int tid, F&& visit) {
    std::uint64_t rank = 0;
    for (int k = kmin; k <= kmax; ++k) {
        std::vector<int> idx(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            if (rank % std::uint64_t(stride) == std::uint64_t(tid)) visit(rank, idx);
            ++rank;
            if (k == 0 || !next_combination(idx, m)) break;
        }
    }
}

struct CexCollector {
    std::mutex mu;
    std::uint64_t best_rank = ~std::uint64_t(0);
    std::string best;

    void offer(std::uint64_t rank, std::string s) {
        std::lock_guard<std::mutex> lk(mu);
        if (rank < best_rank) {
            best_rank = rank;
            best = std::move(s);
        }
    }
};

// runs the sparse-graph spanning check shared by verify_wsat_lower (spanning
// forbidden outright) and verify_2lminus3 (spanning forbidden up to 2l-4
// edges)
OracleReport sparse_spanning_scan(const std::string& lemma, int n, int r,
                                  int kmin, int kmax, int threads) {
    const int m = n * (n - 1) / 2;
    std::uint64_t total = 0;
    for (int k = kmin; k <= kmax; ++k) total += binomial(m, k);
    if (total > 2'500'000)
        throw size_limit_error(lemma + ": subset space exceeds 2.5e6 cases");

    std::vector<Edge> all;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all.push_back(Edge(u, v));

    PatternGraph H(complete_graph(r));
    CexCollector cex;
    int stride = clamp_threads(threads);
    auto worker = [&](int tid) {
        scan_subsets(m, kmin, kmax, stride, tid,
                     [&](std::uint64_t rank, const std::vector<int>& idx) {
                         SimpleGraph g(n);
                         for (int i : idx) g.add_edge(all[std::size_t(i)]);
                         if (close_generic(g, H).first.is_complete()) {
                             std::vector<Edge> es;
                             for (int i : idx) es.push_back(all[std::size_t(i)]);
                             cex.offer(rank, "percolating graph: " +
                                                 edge_list_string(es));
                         }
                     });
    };
    if (stride == 1) {
        worker(0);
    } else {
        std::vector<std::thread> ts;
        for (int t = 0; t < stride; ++t) ts.emplace_back(worker, t);
        for (auto& t : ts) t.join();
    }

    OracleReport rep;
    rep.lemma = lemma;
    std::ostringstream ps;
    ps << "n=" << n << " r=" << r << " edge counts " << kmin << ".." << kmax;
    rep.parameter_space = ps.str();
    rep.cases_checked = total;
    if (cex.best_rank != ~std::uint64_t(0)) rep.counterexample = cex.best;
    return rep;
}

} // namespace

OracleReport verify_wsat_lower(int n, int r, int threads) {
    if (r < 3) throw input_error("verify_wsat_lower: r must be at least 3");
    if (n < r) throw input_error("verify_wsat_lower: n must be at least r");
    if (n > 8) throw size_limit_error("verify_wsat_lower: n limited to 8");
    int k = int(wsat_bound(n, r)) - 1;
    return sparse_spanning_scan("wsat-lower", n, r, k, k, threads);
}

OracleReport verify_2lminus3(int ell, int threads) {
    if (ell < 4) throw input_error("verify_2lminus3: ell must be at least 4");
    if (ell > 7) throw size_limit_error("verify_2lminus3: ell limited to 7");
    return sparse_spanning_scan("2lminus3", ell, 4, 0, 2 * ell - 4,
                                threads);
}

OracleReport verify_double_cover(int m, int r) {
    if (m < 2 || m > 4) throw input_error("verify_double_cover: m must be in 2..4");
    if (r < 4 || r > 8) throw input_error("verify_double_cover: r must be in 4..8");
    const int types = (1 << m) - 1; // nonempty subsets as masks 1..2^m-1
    const long long lam_num = (long long)r * (r - 1) / 2 - 2;
    const long long lam_den = r - 2;

    OracleReport rep;
    rep.lemma = "double-cover";
    {
        std::ostringstream ps;
        ps << "m=" << m << " r=" << r << " families of size 2.." << r;
        rep.parameter_space = ps.str();
    }

    std::vector<int> family; // masks, non-decreasing
    auto render = [&]() {
        std::ostringstream os;
        for (int mask : family) {
            os << '{';
            bool first = true;
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1) {
                    if (!first) os << ',';
                    os << (i + 1);
                    first = false;
                }
            os << '}';
        }
        return os.str();
    };
    auto check = [&]() {
        std::vector<int> cov(std::size_t(m), 0);
        long long sum_sizes = 0;
        for (int mask : family)
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1) {
                    ++cov[std::size_t(i)];
                    ++sum_sizes;
                }
        for (int i = 0; i < m; ++i)
            if (cov[std::size_t(i)] < 2) return;
        long long pairs = 0;
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = i + 1; j < family.size(); ++j)
                if (family[i] & family[j]) ++pairs;
        ++rep.cases_checked;
        // pairs <= lambda(r) (sum - 2m) + m, cross-multiplied by r-2
        if (pairs * lam_den > lam_num * (sum_sizes - 2 * m) + (long long)m * lam_den)
            if (!rep.counterexample) rep.counterexample = render();
    };
    auto rec = [&](auto&& self, int min_type) -> void {
        if (int(family.size()) >= 2) check();
        if (int(family.size()) == r) return;
        for (int t = min_type; t <= types; ++t) {
            family.push_back(t);
            self(self, t);
            family.pop_back();
        }
    };
    rec(rec, 1);
    return rep;
}

OracleReport verify_var_ext(const PatternGraph& H, int d) {
    if (H.vertex_count() < 3)
        throw input_error("verify_var_ext: pattern needs at least 3 vertices");
    if (d < 1) throw input_error("verify_var_ext: depth must be positive");
    GadgetResult gad = build_gadget(H, d);
    const int n = gad.graph.vertex_count();
    if (n > 22) throw size_limit_error("verify_var_ext: gadget exceeds 22 vertices");

    const long long num = (long long)H.edge_count() - 2; // lambda(H) numerator
    const long long den = H.vertex_count() - 2;
    std::vector<std::uint32_t> adj(std::size_t(n), 0);
    for (const Edge& e : gad.graph.edges()) {
        adj[std::size_t(e.u)] |= std::uint32_t(1) << e.v;
        adj[std::size_t(e.v)] |= std::uint32_t(1) << e.u;
    }
    const std::uint32_t root_mask =
        (std::uint32_t(1) << gad.root.u) | (std::uint32_t(1) << gad.root.v);
    const std::uint32_t full = n == 32 ? ~std::uint32_t(0)
                                       : (std::uint32_t(1) << n) - 1;
    const long long total_edges = (long long)gad.graph.edge_count();

    OracleReport rep;
    rep.lemma = "var-ext";
    {
        std::ostringstream ps;
        ps << "pattern v=" << H.vertex_count() << " e=" << H.edge_count()
           << " depth=" << d << " gadget v=" << n;
        rep.parameter_space = ps.str();
    }
    for (std::uint32_t w = 0; w <= full; ++w) {
        if ((w & root_mask) != root_mask) continue;
        int vc = std::popcount(w);
        long long ec = 0;
        for (int v = 0; v < n; ++v)
            if (w >> v & 1)
                ec += std::popcount(adj[std::size_t(v)] & w &
                                    ((std::uint32_t(1) << v) - 1));
        if (w == full) ec = total_edges - 1; // largest proper subgraph
        ++rep.cases_checked;
        if (ec * den > num * (vc - 2)) {
            if (!rep.counterexample) {
                std::ostringstream os;
                os << "vertex set {";
                bool first = true;
                for (int v = 0; v < n; ++v)
                    if (w >> v & 1) {
                        if (!first) os << ',';
                        os << v;
                        first = false;
                    }
                os << "} edges=" << ec;
                rep.counterexample = os.str();
            }
        }
        if (w == full) break;
    }
    return rep;
}

OracleReport verify_dext(int r_size, int s_size, std::uint64_t trials,
                         std::uint64_t seed) {
    if (s_size < 2) throw input_error("verify_dext: s_size must be at least 2");
    if (r_size <= s_size)
        throw input_error("verify_dext: r_size must exceed s_size");
    if (r_size > 64) throw size_limit_error("verify_dext: r_size limited to 64");
    if (trials < 1) throw input_error("verify_dext: trials must be positive");

    OracleReport rep;
    rep.lemma = "dext";
    std::uint64_t spanned = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        double density = 0.2 + 0.1 * double(mix_seed(seed, 2 * t) % 7);
        SimpleGraph sample =
            erdos_renyi(r_size, density, mix_seed(seed, 2 * t + 1));
        SimpleGraph g = sample;
        for (int u = 0; u < s_size; ++u)
            for (int v = u + 1; v < s_size; ++v) g.add_edge(u, v);
        ++rep.cases_checked;
        if (!percolates(g, 4)) continue;
        ++spanned;
        long long outside = 0;
        for (const Edge& e : sample.edges())
            if (e.v >= s_size) ++outside; // u < v, so v >= s_size iff not inside S
        if (outside < 2LL * (r_size - s_size) && !rep.counterexample) {
            std::ostringstream os;
            os << "trial " << t << " density " << density << " edges "
               << edge_list_string(sample.edges());
            rep.counterexample = os.str();
        }
    }
    std::ostringstream ps;
    ps << "r_size=" << r_size << " s_size=" << s_size << " trials=" << trials
       << " spanned=" << spanned;
    rep.parameter_space = ps.str();
    return rep;
}

} // namespace gbp
