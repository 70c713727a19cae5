#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "uniring/relation.hpp"
#include "uniring/types.hpp"

namespace uniring::graphs {

// One arc of a directed multigraph over domain values. Unlabeled arcs model
// a locality relation (arc (a,b) iff the relation holds of (a,b)); labeled
// arcs model template actions (arc a->c with label b encodes the action
// "x_{i-1}=a && x_i=b -> x_i:=c").
struct Arc {
    Value src = 0;
    Value dst = 0;
    std::optional<Value> label;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

// A directed (multi)graph whose vertex set is all of Z_M.
class LabeledGraph {
  public:
    explicit LabeledGraph(Domain domain) : domain_(domain) {}

    const Domain& domain() const { return domain_; }
    const std::set<Arc>& arcs() const { return arcs_; }

    void add_arc(Value src, Value dst,
                 std::optional<Value> label = std::nullopt);

    bool has_arc(Value src, Value dst) const;

    // Successor / predecessor vertex sets (labels ignored, ascending order).
    std::vector<Value> successors(Value v) const;
    std::vector<Value> predecessors(Value v) const;

    friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

  private:
    Domain domain_;
    std::set<Arc> arcs_;
};

// An in-tree: every mapped vertex has exactly one parent and reaches the
// root by iterating the parent map; the root has no parent. Trees grown by
// the synthesis skeleton steps are represented by extending the parent map.
struct InTree {
    Value root = 0;
    std::map<Value, Value> parent; // child -> parent

    // Vertices of the tree (root plus every mapped child and parent).
    std::set<Value> vertices() const;

    // Tree leaves: vertices that are nobody's parent. A bare root with an
    // empty parent map counts as a leaf of its own tree.
    std::set<Value> leaves() const;

    // True iff the parent map is acyclic and every mapped vertex reaches
    // the root.
    bool valid() const;
};

// A closed walk v_0 .. v_{L-1} (arc v_j -> v_{j+1 mod L} for every j).
// Rotations of the same cyclic sequence are distinct walks.
struct ClosedWalk {
    std::vector<Value> vertices;

    std::size_t length() const { return vertices.size(); }

    friend auto operator<=>(const ClosedWalk&, const ClosedWalk&) = default;
};

// The locality graph of a relation: unlabeled arc (a,b) iff rel(a,b).
LabeledGraph locality_graph(const LocalityRelation& rel);

// Vertices lying on at least one cycle: a self-loop or membership in a
// nontrivial strongly connected component qualifies.
std::set<Value> cycle_vertices(const LabeledGraph& g);

// Strongly connected components (labels ignored). Deterministic order.
std::vector<std::vector<Value>> strongly_connected_components(
    const LabeledGraph& g);

// The cycle core around gamma: remove all self-loops, take the strongly
// connected component containing gamma, and keep exactly the arcs with both
// endpoints inside it. A trivial component yields vertex set {gamma} with no
// arcs. Every kept arc lies on a cycle through gamma.
LabeledGraph cycle_core(const LabeledGraph& g, Value gamma);

// Vertices of the cycle core (the component of gamma), ascending. {gamma}
// when the component is trivial.
std::set<Value> core_vertices(const LabeledGraph& g, Value gamma);

// A spanning in-tree of the core rooted at gamma. Every core vertex can
// reach gamma, so the tree always spans. Deterministic tie-break:
// breadth-first from gamma over reversed arcs; among parent candidates at
// the shallowest depth the smallest-numbered parent wins; vertices join in
// ascending order.
InTree spanning_in_tree(const LabeledGraph& core, Value gamma);

// All closed walks of length exactly L, in lexicographic order of their
// vertex sequences. Intended for small L (enumeration is exponential in L).
std::vector<ClosedWalk> closed_walks(const LabeledGraph& g, std::size_t L);

// Expands a closed walk of length L to the ring states of size N it
// describes: repeat the vertex sequence N/L times and take all N rotations
// (deduplicated). Throws DivisibilityError unless L divides N.
std::set<std::vector<Value>> walk_states(const ClosedWalk& w, std::size_t N);

} // namespace uniring::graphs
