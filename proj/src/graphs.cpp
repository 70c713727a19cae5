#include "uniring/graphs.hpp"

#include <algorithm>
#include <vector>

#include "uniring/errors.hpp"

namespace uniring::graphs {

// ===== LabeledGraph ========================================================

void LabeledGraph::add_arc(Value src, Value dst, std::optional<Value> label) {
    if (!domain_.contains(src) || !domain_.contains(dst) ||
        (label && !domain_.contains(*label))) {
        throw DomainError("arc endpoint or label outside the domain");
    }
    arcs_.insert(Arc{src, dst, label});
}

bool LabeledGraph::has_arc(Value src, Value dst) const {
    for (const Arc& a : arcs_) {
        if (a.src == src && a.dst == dst) {
            return true;
        }
    }
    return false;
}

std::vector<Value> LabeledGraph::successors(Value v) const {
    std::set<Value> out;
    for (const Arc& a : arcs_) {
        if (a.src == v) {
            out.insert(a.dst);
        }
    }
    return {out.begin(), out.end()};
}

std::vector<Value> LabeledGraph::predecessors(Value v) const {
    std::set<Value> out;
    for (const Arc& a : arcs_) {
        if (a.dst == v) {
            out.insert(a.src);
        }
    }
    return {out.begin(), out.end()};
}

// ===== InTree ==============================================================

std::set<Value> InTree::vertices() const {
    std::set<Value> vs{root};
    for (const auto& [child, par] : parent) {
        vs.insert(child);
        vs.insert(par);
    }
    return vs;
}

std::set<Value> InTree::leaves() const {
    std::set<Value> vs = vertices();
    for (const auto& [child, par] : parent) {
        (void)child;
        vs.erase(par);
    }
    return vs;
}

bool InTree::valid() const {
    if (parent.count(root) != 0) {
        return false;
    }
    std::size_t bound = vertices().size();
    for (const auto& [child, par] : parent) {
        (void)par;
        Value v = child;
        std::size_t steps = 0;
        while (v != root) {
            auto it = parent.find(v);
            if (it == parent.end() || ++steps > bound) {
                return false; // dangling parent or a cycle
            }
            v = it->second;
        }
    }
    return true;
}

// ===== Construction from relations =========================================

LabeledGraph locality_graph(const LocalityRelation& rel) {
    LabeledGraph g(rel.domain());
    for (const auto& [a, b] : rel.pairs()) {
        g.add_arc(a, b);
    }
    return g;
}

// ===== Strongly connected components (iterative Tarjan) ====================

namespace {

struct TarjanState {
    std::vector<std::vector<Value>> adj;
    std::vector<int> index, lowlink;
    std::vector<bool> on_stack;
    std::vector<Value> stack;
    int next_index = 0;
    std::vector<std::vector<Value>> components;

    explicit TarjanState(const LabeledGraph& g)
        : adj(g.domain().size),
          index(g.domain().size, -1),
          lowlink(g.domain().size, 0),
          on_stack(g.domain().size, false) {
        for (Value v = 0; v < g.domain().size; ++v) {
            adj[v] = g.successors(v);
        }
    }

    void run_from(Value root) {
        // Explicit DFS stack of (vertex, next successor position).
        std::vector<std::pair<Value, std::size_t>> work{{root, 0}};
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!work.empty()) {
            auto& [v, pos] = work.back();
            if (pos < adj[v].size()) {
                Value w = adj[v][pos++];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    work.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    std::vector<Value> component;
                    Value w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        component.push_back(w);
                    } while (w != v);
                    std::sort(component.begin(), component.end());
                    components.push_back(std::move(component));
                }
                Value finished = v;
                work.pop_back();
                if (!work.empty()) {
                    Value parent = work.back().first;
                    lowlink[parent] =
                        std::min(lowlink[parent], lowlink[finished]);
                }
            }
        }
    }
};

} // namespace

std::vector<std::vector<Value>> strongly_connected_components(
    const LabeledGraph& g) {
    TarjanState t(g);
    for (Value v = 0; v < g.domain().size; ++v) {
        if (t.index[v] == -1) {
            t.run_from(v);
        }
    }
    std::sort(t.components.begin(), t.components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return t.components;
}

std::set<Value> cycle_vertices(const LabeledGraph& g) {
    std::set<Value> on_cycle;
    for (const Arc& a : g.arcs()) {
        if (a.src == a.dst) {
            on_cycle.insert(a.src);
        }
    }
    for (const auto& component : strongly_connected_components(g)) {
        if (component.size() >= 2) {
            on_cycle.insert(component.begin(), component.end());
        }
    }
    return on_cycle;
}

// ===== Cycle core ==========================================================

namespace {

LabeledGraph without_self_loops(const LabeledGraph& g) {
    LabeledGraph out(g.domain());
    for (const Arc& a : g.arcs()) {
        if (a.src != a.dst) {
            out.add_arc(a.src, a.dst, a.label);
        }
    }
    return out;
}

} // namespace

std::set<Value> core_vertices(const LabeledGraph& g, Value gamma) {
    LabeledGraph stripped = without_self_loops(g);
    for (const auto& component : strongly_connected_components(stripped)) {
        if (std::find(component.begin(), component.end(), gamma) !=
            component.end()) {
            return {component.begin(), component.end()};
        }
    }
    return {gamma}; // gamma is always a vertex of its own component
}

LabeledGraph cycle_core(const LabeledGraph& g, Value gamma) {
    LabeledGraph stripped = without_self_loops(g);
    std::set<Value> core = core_vertices(g, gamma);
    LabeledGraph out(g.domain());
    for (const Arc& a : stripped.arcs()) {
        if (core.count(a.src) != 0 && core.count(a.dst) != 0) {
            out.add_arc(a.src, a.dst, a.label);
        }
    }
    return out;
}

// ===== Spanning in-tree of the core ========================================

InTree spanning_in_tree(const LabeledGraph& core, Value gamma) {
    InTree tree{gamma, {}};
    std::set<Value> todo = [&core, gamma] {
        std::set<Value> vs;
        for (const Arc& a : core.arcs()) {
            vs.insert(a.src);
            vs.insert(a.dst);
        }
        vs.erase(gamma);
        return vs;
    }();
    // Breadth-first over reversed arcs: a vertex joins at the shallowest
    // possible depth; among its successors at that depth the smallest wins.
    std::set<Value> level{gamma};
    while (!todo.empty() && !level.empty()) {
        std::set<Value> next;
        for (Value v : todo) {
            std::optional<Value> best;
            for (Value succ : core.successors(v)) {
                if (level.count(succ) != 0) {
                    best = best ? std::min(*best, succ) : succ;
                }
            }
            if (best) {
                tree.parent[v] = *best;
                next.insert(v);
            }
        }
        for (Value v : next) {
            todo.erase(v);
        }
        level = std::move(next);
    }
    return tree; // todo empties: every core vertex reaches gamma
}

// ===== Closed walks and their ring expansions ==============================

namespace {

void extend_walk(const LabeledGraph& g, std::vector<Value>& prefix,
                 std::size_t target, std::vector<ClosedWalk>& out) {
    if (prefix.size() == target) {
        if (g.has_arc(prefix.back(), prefix.front())) {
            out.push_back(ClosedWalk{prefix});
        }
        return;
    }
    for (Value next : g.successors(prefix.back())) {
        prefix.push_back(next);
        extend_walk(g, prefix, target, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<ClosedWalk> closed_walks(const LabeledGraph& g, std::size_t L) {
    std::vector<ClosedWalk> out;
    if (L == 0) {
        return out;
    }
    std::vector<Value> prefix;
    for (Value v = 0; v < g.domain().size; ++v) {
        prefix.assign(1, v);
        extend_walk(g, prefix, L, out);
    }
    return out; // ascending start vertex + ascending successors = lexicographic
}

std::set<std::vector<Value>> walk_states(const ClosedWalk& w, std::size_t N) {
    if (w.length() == 0 || N == 0 || N % w.length() != 0) {
        throw DivisibilityError(
            "walk length " + std::to_string(w.length()) +
            " does not divide ring size " + std::to_string(N));
    }
    std::vector<Value> base;
    base.reserve(N);
    for (std::size_t k = 0; k < N / w.length(); ++k) {
        base.insert(base.end(), w.vertices.begin(), w.vertices.end());
    }
    std::set<std::vector<Value>> states;
    for (std::size_t shift = 0; shift < N; ++shift) {
        std::vector<Value> rotated(N);
        for (std::size_t i = 0; i < N; ++i) {
            rotated[i] = base[(i + shift) % N];
        }
        states.insert(std::move(rotated));
    }
    return states;
}

} // namespace uniring::graphs
