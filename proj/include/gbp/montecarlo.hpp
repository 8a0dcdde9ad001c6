#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gbp/graph.hpp"
#include "gbp/pattern.hpp"

namespace gbp {

// pattern handle for the sampling harness; complete patterns carry r so the
// clique fast paths apply
struct PatternRef {
    std::string name;
    int r = 0; // > 0: closure under K_r
    std::optional<PatternGraph> H;

    static PatternRef kr(int r);
    static PatternRef generic(std::string name, PatternGraph H);
};

bool percolates(const SimpleGraph& g, const PatternRef& ref);

// Wilson 95% interval around successes/trials
struct ProbEstimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

ProbEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials);

// percolation probability of G(n, p); trial i draws from
// mix_seed(master_seed, i), so results are independent of thread count
ProbEstimate percolation_probability(int n, const PatternRef& ref, double p,
                                     std::uint64_t trials,
                                     std::uint64_t master_seed,
                                     int threads = 1);

struct PcEvaluation {
    double p = 0.0;
    ProbEstimate est;
};

struct PcEstimate {
    int n = 0;
    std::string pattern;
    double p_low = 0.0;
    double p_high = 0.0;
    double point = 0.0;
    std::uint64_t trials_per_eval = 0;
    std::uint64_t master_seed = 0;
    std::vector<PcEvaluation> evaluations; // in evaluation order
};

// bisects for the p where the percolation probability crosses 1/2, sharing
// one seed across evaluations (common random numbers); the final bracket is
// widened to cover every evaluation whose Wilson interval straddles 1/2
PcEstimate estimate_pc(int n, const PatternRef& ref,
                       std::uint64_t trials_per_eval, double rel_tol,
                       std::uint64_t master_seed, int threads = 1);

struct SweepRecord {
    int n = 0;
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t master_seed = 0;
};

std::vector<SweepRecord> sweep(const std::vector<int>& ns,
                               const std::vector<double>& ps,
                               const PatternRef& ref, std::uint64_t trials,
                               std::uint64_t master_seed, int threads = 1);

// probability that G(ell, p) is spanned by the K_4 process, with the
// regime flag p * ell^2 <= 1
struct SpanningProbEstimate {
    ProbEstimate est;
    double p = 0.0;
    int ell = 0;
    bool hypothesis_ok = false;
};

SpanningProbEstimate estimate_spanning_prob(int ell, double p,
                                            std::uint64_t trials,
                                            std::uint64_t master_seed,
                                            int threads = 1);

// analytic spanning-probability bounds: both equal
// (l p)^(2l-3) times constants (2 e^2)^-l resp. 4^3 (e/4)^(2l)
std::pair<double, double> plp_bounds(int ell, double p);

// K_3 percolation probability of G(n, (ln n + c)/n) against the sharp
// connectivity limit exp(-exp(-c))
struct ErLimitResult {
    ProbEstimate est;
    double p = 0.0;
    double c = 0.0;
    double limit = 0.0;
};

ErLimitResult er_limit_check(int n, double c, std::uint64_t trials,
                             std::uint64_t master_seed, int threads = 1);

} // namespace gbp
