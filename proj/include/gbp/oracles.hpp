#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gbp/pattern.hpp"

namespace gbp {

// exhaustive / randomized finite checks of the inequalities the tracing
// algorithms rely on; a populated counterexample means the claim failed

struct OracleReport {
    std::string lemma;
    std::string parameter_space;
    std::uint64_t cases_checked = 0;
    std::optional<std::string> counterexample;
};

// no n-vertex graph with wsat_bound(n, r) - 1 edges percolates under K_r
// (closure via the generic embedding engine)
OracleReport verify_wsat_lower(int n, int r, int threads = 1);

// no graph on ell vertices with at most 2*ell - 4 edges has K_4-closure
// equal to the complete graph
OracleReport verify_2lminus3(int ell, int threads = 1);

// every multiset of at most r nonempty subsets of [m] covering each element
// at least twice has at most lambda(r) * (sum |A| - 2m) + m intersecting
// pairs
OracleReport verify_double_cover(int m, int r);

// every proper subgraph F of the depth-d gadget containing both root
// endpoints satisfies e(F) <= lambda(H) * (v(F) - 2)
OracleReport verify_var_ext(const PatternGraph& H, int d);

// randomized: when the K_4 closure of (sample + complete S) spans all
// r_size vertices, the sample has at least 2 * (r_size - s_size) edges not
// inside S
OracleReport verify_dext(int r_size, int s_size, std::uint64_t trials,
                         std::uint64_t seed);

} // namespace gbp
