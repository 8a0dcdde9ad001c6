#include "gbp/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gbp/clique_process.hpp"
#include "gbp/engine.hpp"
#include "gbp/errors.hpp"
#include "gbp/graph.hpp"
#include "gbp/montecarlo.hpp"
#include "gbp/oracles.hpp"
#include "gbp/pattern.hpp"
#include "gbp/witness.hpp"

namespace gbp {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write file: " + path);
    out << text;
}

SimpleGraph load_graph(const std::string& path) {
    return graph_from_edge_list(read_file(path));
}

// named pattern first; otherwise an edge-list file
PatternGraph load_pattern(const std::string& spec) {
    try {
        return named_pattern(spec);
    } catch (const input_error&) {
        if (std::filesystem::exists(spec))
            return PatternGraph(load_graph(spec));
        throw;
    }
}

PatternRef pattern_ref(const std::string& spec) {
    return PatternRef::generic(spec, load_pattern(spec));
}

Edge parse_edge(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw input_error("edge must be given as u,v");
    try {
        int u = std::stoi(text.substr(0, comma));
        int v = std::stoi(text.substr(comma + 1));
        if (u == v) throw input_error("edge endpoints must differ");
        return Edge(u, v);
    } catch (const input_error&) {
        throw;
    } catch (const std::exception&) {
        throw input_error("edge must be given as u,v");
    }
}

template <class T, class Conv>
std::vector<T> parse_list(const std::string& text, Conv conv,
                          const std::string& what) {
    std::vector<T> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(conv(item));
        } catch (const std::exception&) {
            throw input_error("invalid " + what + " entry: " + item);
        }
    }
    if (out.empty()) throw input_error(what + " must be a non-empty list");
    return out;
}

std::uint64_t env_seed() {
    const char* s = std::getenv("GBP_SEED");
    if (!s || !*s) return 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0')
        throw input_error("GBP_SEED must be an unsigned integer");
    return v;
}

ordered_json edge_json(Edge e) { return ordered_json::array({e.u, e.v}); }

ordered_json edges_json(const std::vector<Edge>& es) {
    ordered_json a = ordered_json::array();
    for (const Edge& e : es) a.push_back(edge_json(e));
    return a;
}

std::string num(double x) { return ordered_json(x).dump(); }

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

struct CloseArgs {
    std::string graph, pattern, out_path;
    bool trace = false;
};

void cmd_close(const CloseArgs& a, std::ostream& out) {
    SimpleGraph g = load_graph(a.graph);
    PatternRef ref = pattern_ref(a.pattern);
    std::pair<SimpleGraph, InfectionTrace> res =
        ref.r > 0 ? close_kr(g, ref.r) : close_generic(g, *ref.H);
    const SimpleGraph& cl = res.first;
    const InfectionTrace& tr = res.second;

    ordered_json j;
    j["n"] = cl.vertex_count();
    j["pattern"] = a.pattern;
    j["initial_edges"] = g.edge_count();
    j["closure_edges"] = cl.edge_count();
    j["percolates"] = cl.is_complete();
    j["rounds"] = tr.rounds.size();
    if (a.trace) {
        ordered_json t;
        t["initial"] = edges_json(tr.initial);
        ordered_json rounds = ordered_json::array();
        for (const auto& round : tr.rounds) {
            ordered_json rj = ordered_json::array();
            for (const InfectionEvent& ev : round) {
                ordered_json e;
                e["edge"] = edge_json(ev.edge);
                e["witness"] = ev.witness;
                rj.push_back(std::move(e));
            }
            rounds.push_back(std::move(rj));
        }
        t["rounds"] = std::move(rounds);
        j["trace"] = std::move(t);
    }
    if (!a.out_path.empty()) write_file(a.out_path, serialize(cl));
    emit(out, j);
}

struct WitnessArgs {
    std::string graph, pattern, edge;
};

void cmd_witness(const WitnessArgs& a, std::ostream& out) {
    SimpleGraph g = load_graph(a.graph);
    PatternRef ref = pattern_ref(a.pattern);
    if (ref.r < 4)
        throw input_error("witness requires a complete pattern K_r with r >= 4");
    Edge e = parse_edge(a.edge);
    WitnessSet w = witness_set(g, ref.r, e);

    ordered_json j;
    j["target"] = edge_json(w.target);
    j["trivial"] = w.trivial;
    j["vertex_count"] = w.vertex_count;
    j["edge_count"] = w.edge_count;
    j["edges"] = edges_json(w.edges);
    j["extremal_ok"] = check_extremal(w, ref.r);
    ordered_json steps = ordered_json::array();
    if (!w.trivial) {
        RedEdgeTrace t = red_edge_trace(g, ref.r, e);
        for (std::size_t i = 0; i < t.steps.size(); ++i) {
            const RedEdgeStep& s = t.steps[i];
            ordered_json sj;
            sj["clique"] = s.clique;
            sj["red"] = edge_json(s.red);
            sj["b_vertices"] = s.b_vertices;
            sj["b_edges"] = s.b_edges;
            sj["ell"] = s.ell;
            sj["k"] = s.k;
            sj["tech_ok"] = check_tech(t, ref.r, int(i) + 1);
            steps.push_back(std::move(sj));
        }
    }
    j["red_steps"] = std::move(steps);
    emit(out, j);
}

struct GadgetArgs {
    std::string pattern, out_path;
    int depth = 1;
};

void cmd_gadget(const GadgetArgs& a, std::ostream& out) {
    PatternGraph H = load_pattern(a.pattern);
    GadgetResult res = build_gadget(H, a.depth);
    ordered_json j;
    j["pattern"] = a.pattern;
    j["depth"] = res.depth;
    j["vertices"] = res.graph.vertex_count();
    j["edges"] = res.graph.edge_count();
    j["root"] = edge_json(res.root);
    j["edge_list"] = edges_json(res.graph.edges());
    if (!a.out_path.empty()) {
        std::ostringstream body;
        body << "# root: " << res.root.u << ' ' << res.root.v << "\n"
             << serialize(res.graph);
        write_file(a.out_path, body.str());
    }
    emit(out, j);
}

struct WsatArgs {
    std::string out_path;
    int n = 0, r = 0;
    bool construct = false;
};

void cmd_wsat(const WsatArgs& a, std::ostream& out) {
    std::uint64_t bound = wsat_bound(a.n, a.r);
    out << bound << "\n";
    if (a.construct) {
        std::string body = serialize(wsat_construction(a.n, a.r));
        if (!a.out_path.empty()) write_file(a.out_path, body);
        else out << body;
    }
}

struct PcArgs {
    std::string pattern;
    int n = 0, threads = 1;
    std::uint64_t trials = 0, seed = 0;
    double rtol = 0.05;
};

void cmd_estimate_pc(const PcArgs& a, std::ostream& out) {
    PcEstimate res = estimate_pc(a.n, pattern_ref(a.pattern), a.trials, a.rtol,
                                 a.seed, a.threads);
    ordered_json j;
    j["n"] = res.n;
    j["pattern"] = res.pattern;
    j["p_c_estimate"] = res.point;
    j["p_low"] = res.p_low;
    j["p_high"] = res.p_high;
    j["trials_per_eval"] = res.trials_per_eval;
    j["master_seed"] = res.master_seed;
    emit(out, j);
}

struct SweepArgs {
    std::string n_list, p_grid, pattern, out_path;
    std::uint64_t trials = 0, seed = 0;
    int threads = 1;
};

void cmd_sweep(const SweepArgs& a, std::ostream& out) {
    std::vector<int> ns = parse_list<int>(
        a.n_list, [](const std::string& s) { return std::stoi(s); }, "n-list");
    std::vector<double> ps = parse_list<double>(
        a.p_grid, [](const std::string& s) { return std::stod(s); }, "p-grid");
    std::vector<SweepRecord> recs =
        sweep(ns, ps, pattern_ref(a.pattern), a.trials, a.seed, a.threads);
    std::ostringstream csv;
    csv << "n,p,trials,successes,point,ci_low,ci_high,master_seed\n";
    for (const SweepRecord& rec : recs)
        csv << rec.n << ',' << num(rec.p) << ',' << rec.trials << ','
            << rec.successes << ',' << num(rec.point) << ',' << num(rec.ci_low)
            << ',' << num(rec.ci_high) << ',' << rec.master_seed << "\n";
    if (!a.out_path.empty()) write_file(a.out_path, csv.str());
    else out << csv.str();
}

struct SpanArgs {
    int ell = 0, threads = 1;
    double p = 0.0;
    std::uint64_t trials = 0, seed = 0;
};

void cmd_spanning(const SpanArgs& a, std::ostream& out) {
    SpanningProbEstimate res =
        estimate_spanning_prob(a.ell, a.p, a.trials, a.seed, a.threads);
    auto [lo, hi] = plp_bounds(a.ell, a.p);
    ordered_json j;
    j["l"] = res.ell;
    j["p"] = res.p;
    j["trials"] = res.est.trials;
    j["successes"] = res.est.successes;
    j["point"] = res.est.point;
    j["ci_low"] = res.est.ci_low;
    j["ci_high"] = res.est.ci_high;
    j["hypothesis_ok"] = res.hypothesis_ok;
    j["lower_bound"] = lo;
    j["upper_bound"] = hi;
    emit(out, j);
}

struct ErArgs {
    int n = 0, threads = 1;
    double c = 0.0;
    std::uint64_t trials = 0, seed = 0;
};

void cmd_er_limit(const ErArgs& a, std::ostream& out) {
    ErLimitResult res = er_limit_check(a.n, a.c, a.trials, a.seed, a.threads);
    ordered_json j;
    j["n"] = a.n;
    j["c"] = res.c;
    j["p"] = res.p;
    j["trials"] = res.est.trials;
    j["successes"] = res.est.successes;
    j["point"] = res.est.point;
    j["ci_low"] = res.est.ci_low;
    j["ci_high"] = res.est.ci_high;
    j["limit"] = res.limit;
    emit(out, j);
}

struct VerifyArgs {
    std::string lemma, pattern;
    int n = 0, r = 0, ell = 0, m = 0, depth = 1, r_size = 0, s_size = 0,
        threads = 1;
    std::uint64_t trials = 10000, seed = 0;
};

void cmd_verify(const VerifyArgs& a, std::ostream& out) {
    OracleReport rep;
    if (a.lemma == "wsat-lower") {
        rep = verify_wsat_lower(a.n, a.r, a.threads);
    } else if (a.lemma == "2lminus3") {
        rep = verify_2lminus3(a.ell, a.threads);
    } else if (a.lemma == "double-cover") {
        rep = verify_double_cover(a.m, a.r);
    } else if (a.lemma == "var-ext") {
        if (a.pattern.empty()) throw input_error("var-ext requires --pattern");
        rep = verify_var_ext(load_pattern(a.pattern), a.depth);
    } else if (a.lemma == "dext") {
        rep = verify_dext(a.r_size, a.s_size, a.trials, a.seed);
    } else {
        throw input_error("unknown lemma: " + a.lemma);
    }
    ordered_json j;
    j["lemma"] = rep.lemma;
    j["parameter_space"] = rep.parameter_space;
    j["cases_checked"] = rep.cases_checked;
    if (rep.counterexample) j["counterexample"] = *rep.counterexample;
    else j["counterexample"] = nullptr;
    emit(out, j);
}

struct BoundsArgs {
    int n = 0, r = 0;
};

void cmd_bounds(const BoundsArgs& a, std::ostream& out) {
    Rational lam = lambda_for_clique(a.r);
    ordered_json j;
    j["n"] = a.n;
    j["r"] = a.r;
    j["lambda"] = lam.to_string();
    j["lambda_value"] = lam.to_double();
    j["wsat_bound"] = wsat_bound(a.n, a.r);
    if (a.r >= 4) {
        auto [lo, hi] = kr_threshold_window(a.n, a.r);
        j["window_low"] = lo;
        j["window_high"] = hi;
    } else {
        j["window_low"] = nullptr;
        j["window_high"] = nullptr;
    }
    emit(out, j);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    try {
        std::uint64_t seed0 = env_seed();

        CLI::App app{"graph bootstrap percolation toolkit"};
        app.name("gbp");
        app.require_subcommand(1);

        CloseArgs close_a;
        CLI::App* close_c = app.add_subcommand("close", "compute the closure");
        close_c->add_option("--graph", close_a.graph, "edge-list file")->required();
        close_c->add_option("--pattern", close_a.pattern, "pattern name or file")
            ->required();
        close_c->add_flag("--trace", close_a.trace, "include the infection trace");
        close_c->add_option("--out", close_a.out_path, "write closure edge list");
        close_c->callback([&]() { cmd_close(close_a, out); });

        CloseArgs perc_a;
        CLI::App* perc_c =
            app.add_subcommand("percolates", "does the closure reach K_n");
        perc_c->add_option("--graph", perc_a.graph, "edge-list file")->required();
        perc_c->add_option("--pattern", perc_a.pattern, "pattern name or file")
            ->required();
        perc_c->callback([&]() {
            SimpleGraph g = load_graph(perc_a.graph);
            out << (percolates(g, pattern_ref(perc_a.pattern)) ? "true" : "false")
                << "\n";
        });

        WitnessArgs wit_a;
        CLI::App* wit_c =
            app.add_subcommand("witness", "witness set and red-edge trace");
        wit_c->add_option("--graph", wit_a.graph, "edge-list file")->required();
        wit_c->add_option("--pattern", wit_a.pattern, "complete pattern K_r")
            ->required();
        wit_c->add_option("--edge", wit_a.edge, "target edge u,v")->required();
        wit_c->callback([&]() { cmd_witness(wit_a, out); });

        GadgetArgs gad_a;
        CLI::App* gad_c =
            app.add_subcommand("gadget", "depth-d slow-percolation gadget");
        gad_c->add_option("--pattern", gad_a.pattern, "pattern name or file")
            ->required();
        gad_c->add_option("--depth", gad_a.depth, "number of glued copies")
            ->required();
        gad_c->add_option("--out", gad_a.out_path, "write edge list with root");
        gad_c->callback([&]() { cmd_gadget(gad_a, out); });

        WsatArgs wsat_a;
        CLI::App* wsat_c =
            app.add_subcommand("wsat", "weak saturation bound / construction");
        wsat_c->add_option("--n", wsat_a.n, "host size")->required();
        wsat_c->add_option("--r", wsat_a.r, "clique order")->required();
        wsat_c->add_flag("--construct", wsat_a.construct, "emit extremal graph");
        wsat_c->add_option("--out", wsat_a.out_path, "write construction");
        wsat_c->callback([&]() { cmd_wsat(wsat_a, out); });

        PcArgs pc_a;
        pc_a.seed = seed0;
        CLI::App* pc_c =
            app.add_subcommand("estimate-pc", "bisect the critical probability");
        pc_c->add_option("--n", pc_a.n, "host size")->required();
        pc_c->add_option("--pattern", pc_a.pattern, "pattern name or file")
            ->required();
        pc_c->add_option("--trials", pc_a.trials, "trials per evaluation")
            ->required();
        pc_c->add_option("--rtol", pc_a.rtol, "relative bracket tolerance")
            ->required();
        pc_c->add_option("--seed", pc_a.seed, "master seed");
        pc_c->add_option("--threads", pc_a.threads, "worker threads");
        pc_c->callback([&]() { cmd_estimate_pc(pc_a, out); });

        SweepArgs sweep_a;
        sweep_a.seed = seed0;
        CLI::App* sweep_c =
            app.add_subcommand("sweep", "percolation probability grid (CSV)");
        sweep_c->add_option("--n-list", sweep_a.n_list, "comma-separated n values")
            ->required();
        sweep_c->add_option("--p-grid", sweep_a.p_grid, "comma-separated p values")
            ->required();
        sweep_c->add_option("--pattern", sweep_a.pattern, "pattern name or file")
            ->required();
        sweep_c->add_option("--trials", sweep_a.trials, "trials per cell")
            ->required();
        sweep_c->add_option("--seed", sweep_a.seed, "master seed");
        sweep_c->add_option("--threads", sweep_a.threads, "worker threads");
        sweep_c->add_option("--out", sweep_a.out_path, "write CSV to file");
        sweep_c->callback([&]() { cmd_sweep(sweep_a, out); });

        SpanArgs span_a;
        span_a.seed = seed0;
        CLI::App* span_c = app.add_subcommand(
            "spanning-prob", "K_4 spanning probability on l vertices");
        span_c->add_option("--l", span_a.ell, "vertex count")->required();
        span_c->add_option("--p", span_a.p, "edge probability")->required();
        span_c->add_option("--trials", span_a.trials, "trial count")->required();
        span_c->add_option("--seed", span_a.seed, "master seed");
        span_c->add_option("--threads", span_a.threads, "worker threads");
        span_c->callback([&]() { cmd_spanning(span_a, out); });

        ErArgs er_a;
        er_a.seed = seed0;
        CLI::App* er_c = app.add_subcommand(
            "er-limit", "K_3 percolation against the connectivity limit");
        er_c->add_option("--n", er_a.n, "host size")->required();
        er_c->add_option("--c", er_a.c, "offset in p = (ln n + c)/n")->required();
        er_c->add_option("--trials", er_a.trials, "trial count")->required();
        er_c->add_option("--seed", er_a.seed, "master seed");
        er_c->add_option("--threads", er_a.threads, "worker threads");
        er_c->callback([&]() { cmd_er_limit(er_a, out); });

        VerifyArgs ver_a;
        ver_a.seed = seed0;
        CLI::App* ver_c =
            app.add_subcommand("verify", "exhaustive / randomized lemma oracle");
        ver_c->add_option("--lemma", ver_a.lemma,
                          "wsat-lower | 2lminus3 | double-cover | var-ext | dext")
            ->required();
        ver_c->add_option("--n", ver_a.n, "host size (wsat-lower)");
        ver_c->add_option("--r", ver_a.r, "clique order");
        ver_c->add_option("--l", ver_a.ell, "vertex count (2lminus3)");
        ver_c->add_option("--m", ver_a.m, "ground-set size (double-cover)");
        ver_c->add_option("--pattern", ver_a.pattern, "pattern (var-ext)");
        ver_c->add_option("--depth", ver_a.depth, "gadget depth (var-ext)");
        ver_c->add_option("--r-size", ver_a.r_size, "spanned set size (dext)");
        ver_c->add_option("--s-size", ver_a.s_size, "planted clique size (dext)");
        ver_c->add_option("--trials", ver_a.trials, "trial count (dext)");
        ver_c->add_option("--seed", ver_a.seed, "master seed (dext)");
        ver_c->add_option("--threads", ver_a.threads, "worker threads");
        ver_c->callback([&]() { cmd_verify(ver_a, out); });

        BoundsArgs b_a;
        CLI::App* b_c =
            app.add_subcommand("bounds", "lambda, threshold window, wsat bound");
        b_c->add_option("--n", b_a.n, "host size")->required();
        b_c->add_option("--r", b_a.r, "clique order")->required();
        b_c->callback([&]() { cmd_bounds(b_a, out); });

        std::vector<const char*> argv;
        argv.push_back("gbp");
        for (const std::string& a : args) argv.push_back(a.c_str());
        try {
            app.parse(int(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "usage error: " << e.what() << "\n";
            return 1;
        }
        return 0;
    } catch (const size_limit_error& e) {
        err << "size limit: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace gbp
