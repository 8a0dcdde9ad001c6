#include "gbp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "gbp/engine.hpp"
#include "gbp/errors.hpp"
#include "gbp/rng.hpp"

namespace gbp {

namespace {

int clamp_threads(int threads) { return std::max(1, std::min(threads, 16)); }

// per-trial outcomes depend only on the trial index, so any chunking yields
// the same success count
template <class F>
std::uint64_t run_trials(std::uint64_t trials, int threads, F&& trial) {
    threads = clamp_threads(threads);
    if (threads == 1 || trials < 2 * std::uint64_t(threads)) {
        std::uint64_t s = 0;
        for (std::uint64_t i = 0; i < trials; ++i) s += trial(i) ? 1 : 0;
        return s;
    }
    std::uint64_t chunk = (trials + std::uint64_t(threads) - 1) / std::uint64_t(threads);
    std::vector<std::uint64_t> counts(std::size_t(threads), 0);
    std::vector<std::exception_ptr> errs{std::size_t(threads)};
    std::vector<std::thread> ts;
    for (int t = 0; t < threads; ++t) {
        ts.emplace_back([&, t]() {
            std::uint64_t lo = std::uint64_t(t) * chunk;
            std::uint64_t hi = std::min(trials, lo + chunk);
            try {
                std::uint64_t s = 0;
                for (std::uint64_t i = lo; i < hi; ++i) s += trial(i) ? 1 : 0;
                counts[std::size_t(t)] = s;
            } catch (...) {
                errs[std::size_t(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : ts) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    std::uint64_t s = 0;
    for (std::uint64_t c : counts) s += c;
    return s;
}

void validate_prob(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw input_error("probability must lie in [0, 1]");
}

} // namespace

PatternRef PatternRef::kr(int r) {
    if (r < 3) throw input_error("PatternRef::kr requires r >= 3");
    PatternRef ref;
    ref.name = "K" + std::to_string(r);
    ref.r = r;
    return ref;
}

PatternRef PatternRef::generic(std::string name, PatternGraph H) {
    PatternRef ref;
    ref.name = std::move(name);
    if (H.is_complete() && H.vertex_count() >= 3) ref.r = H.vertex_count();
    ref.H = std::move(H);
    return ref;
}

bool percolates(const SimpleGraph& g, const PatternRef& ref) {
    if (ref.r > 0) return percolates(g, ref.r);
    if (!ref.H) throw input_error("pattern reference carries no pattern");
    return percolates(g, *ref.H);
}

ProbEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw input_error("wilson_interval: trials must be positive");
    if (successes > trials)
        throw input_error("wilson_interval: successes exceed trials");
    const double z = 1.96;
    double nn = double(trials);
    double ph = double(successes) / nn;
    double z2 = z * z;
    double denom = 1.0 + z2 / nn;
    double center = (ph + z2 / (2.0 * nn)) / denom;
    double half = (z / denom) *
                  std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn));
    ProbEstimate est;
    est.successes = successes;
    est.trials = trials;
    est.point = ph;
    est.ci_low = std::max(0.0, center - half);
    est.ci_high = std::min(1.0, center + half);
    return est;
}

ProbEstimate percolation_probability(int n, const PatternRef& ref, double p,
                                     std::uint64_t trials,
                                     std::uint64_t master_seed, int threads) {
    validate_prob(p);
    if (trials < 1) throw input_error("trials must be positive");
    std::uint64_t s = run_trials(trials, threads, [&](std::uint64_t i) {
        SimpleGraph g = erdos_renyi(n, p, mix_seed(master_seed, i));
        return percolates(g, ref);
    });
    return wilson_interval(s, trials);
}

PcEstimate estimate_pc(int n, const PatternRef& ref,
                       std::uint64_t trials_per_eval, double rel_tol,
                       std::uint64_t master_seed, int threads) {
    if (trials_per_eval < 1) throw input_error("trials_per_eval must be positive");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw input_error("rel_tol must lie in (0, 1)");

    PcEstimate out;
    out.n = n;
    out.pattern = ref.name;
    out.trials_per_eval = trials_per_eval;
    out.master_seed = master_seed;

    std::map<double, ProbEstimate> cache;
    auto eval = [&](double p) -> const ProbEstimate& {
        auto it = cache.find(p);
        if (it == cache.end()) {
            ProbEstimate est = percolation_probability(
                n, ref, p, trials_per_eval, master_seed, threads);
            it = cache.emplace(p, est).first;
            out.evaluations.push_back({p, est});
        }
        return it->second;
    };

    if (eval(1.0).point < 0.5)
        throw input_error("estimate_pc: pattern does not percolate at p = 1");

    double hi = 1.0, lo = 0.0;
    bool bracketed = false;
    double p = 0.5;
    for (int i = 0; i < 60; ++i) {
        if (eval(p).point < 0.5) {
            lo = p;
            hi = 2.0 * p;
            bracketed = true;
            break;
        }
        p /= 2.0;
    }
    if (!bracketed)
        throw input_error("estimate_pc: percolation persists at vanishing p");

    while ((hi - lo) / hi >= rel_tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // double resolution exhausted
        if (eval(mid).point >= 0.5) hi = mid;
        else lo = mid;
    }

    // widen to every evaluation whose interval straddles 1/2
    double wl = lo, wh = hi;
    for (const PcEvaluation& ev : out.evaluations)
        if (ev.est.ci_low <= 0.5 && 0.5 <= ev.est.ci_high) {
            wl = std::min(wl, ev.p);
            wh = std::max(wh, ev.p);
        }
    out.p_low = wl;
    out.p_high = wh;
    out.point = 0.5 * (wl + wh);
    return out;
}

std::vector<SweepRecord> sweep(const std::vector<int>& ns,
                               const std::vector<double>& ps,
                               const PatternRef& ref, std::uint64_t trials,
                               std::uint64_t master_seed, int threads) {
    std::vector<SweepRecord> out;
    for (int n : ns)
        for (double p : ps) {
            ProbEstimate est =
                percolation_probability(n, ref, p, trials, master_seed, threads);
            out.push_back({n, p, est.trials, est.successes, est.point,
                           est.ci_low, est.ci_high, master_seed});
        }
    return out;
}

SpanningProbEstimate estimate_spanning_prob(int ell, double p,
                                            std::uint64_t trials,
                                            std::uint64_t master_seed,
                                            int threads) {
    if (ell < 2 || ell > 64)
        throw input_error("estimate_spanning_prob: ell must be in 2..64");
    validate_prob(p);
    SpanningProbEstimate out;
    out.p = p;
    out.ell = ell;
    out.hypothesis_ok = p * double(ell) * double(ell) <= 1.0;
    std::uint64_t s = run_trials(trials, threads, [&](std::uint64_t i) {
        SimpleGraph g = erdos_renyi(ell, p, mix_seed(master_seed, i));
        return percolates(g, 4);
    });
    out.est = wilson_interval(s, trials);
    return out;
}

std::pair<double, double> plp_bounds(int ell, double p) {
    if (ell < 3) throw input_error("plp_bounds: ell must be at least 3");
    if (!(p > 0.0 && p <= 1.0))
        throw input_error("plp_bounds: p must lie in (0, 1]");
    const double e = std::exp(1.0);
    double core = std::pow(double(ell) * p, 2.0 * ell - 3.0);
    double lower = std::pow(1.0 / (2.0 * e * e), double(ell)) * core;
    double upper = 64.0 * std::pow(e / 4.0, 2.0 * double(ell)) * core;
    return {lower, upper};
}

ErLimitResult er_limit_check(int n, double c, std::uint64_t trials,
                             std::uint64_t master_seed, int threads) {
    if (n < 2) throw input_error("er_limit_check: n must be at least 2");
    ErLimitResult out;
    out.c = c;
    out.p = std::min(1.0, std::max(0.0, (std::log(double(n)) + c) / double(n)));
    out.limit = std::exp(-std::exp(-c));
    std::uint64_t s = run_trials(trials, threads, [&](std::uint64_t i) {
        SimpleGraph g = erdos_renyi(n, out.p, mix_seed(master_seed, i));
        return percolates(g, 3);
    });
    out.est = wilson_interval(s, trials);
    return out;
}

} // namespace gbp
