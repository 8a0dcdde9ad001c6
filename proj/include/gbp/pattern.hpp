#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gbp/graph.hpp"
#include "gbp/rational.hpp"

namespace gbp {

// infection pattern H: connected, 2 <= v(H) <= 16, at least one edge.
// completions(): per edge e of H, the template H - e with the endpoints of e
// as anchors; a copy of the template with infected edges makes the anchor
// image pair infectable.
class PatternGraph {
  public:
    struct Completion {
        Edge removed;      // anchors in pattern labels
        SimpleGraph tmpl;  // base minus removed, same labels
    };

    explicit PatternGraph(SimpleGraph base);

    const SimpleGraph& base() const { return base_; }
    int vertex_count() const { return base_.vertex_count(); }
    std::uint64_t edge_count() const { return base_.edge_count(); }
    const std::vector<Completion>& completions() const { return completions_; }
    bool is_complete() const { return base_.is_complete(); }

  private:
    SimpleGraph base_;
    std::vector<Completion> completions_;
};

// edge/vertex ratio (e(H)-2)/(v(H)-2); exact
Rational lambda(const PatternGraph& H);
Rational lambda_for_clique(int r);

bool is_balanced(const PatternGraph& H);

// min over e of the max density e(F)/v(F) over nonempty subgraphs F of H-e
Rational lambda_star(const PatternGraph& H);

// chain of d pattern copies glued along alternating disjoint edges; the root
// edge is absent and becomes infected in round exactly d under H
struct GadgetResult {
    SimpleGraph graph;
    Edge root;
    int depth = 0;
};
GadgetResult build_gadget(const PatternGraph& H, int d);

std::uint64_t wsat_bound(int n, int r);
SimpleGraph wsat_construction(int n, int r); // wsat_bound(n,r) edges, percolates under K_r

// (low, high) probability window containing the K_r percolation threshold
std::pair<double, double> kr_threshold_window(int n, int r);

// "K<r>", "C<k>", "K<s>,<t>", "DD<r>"
PatternGraph named_pattern(const std::string& name);

} // namespace gbp
