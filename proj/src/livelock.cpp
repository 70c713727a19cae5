#include "uniring/livelock.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "uniring/graphs.hpp"

namespace uniring::livelock {

bool leads(const Action& x, const Action& y) { return y.b == x.c; }

bool leads(const Propagation& x, const Propagation& y) {
    if (x.period() != y.period()) {
        return false;
    }
    for (std::size_t j = 0; j < x.period(); ++j) {
        if (!leads(x.actions[j], y.actions[j])) {
            return false;
        }
    }
    return true;
}

namespace {

void extend_propagation(const std::map<Value, std::vector<Action>>& by_src,
                        std::vector<Action>& prefix, std::size_t period,
                        std::vector<Propagation>& out) {
    if (prefix.size() == period) {
        if (prefix.back().c == prefix.front().a) {
            out.push_back(Propagation{prefix});
        }
        return;
    }
    auto it = by_src.find(prefix.back().c);
    if (it == by_src.end()) {
        return;
    }
    for (const Action& next : it->second) {
        prefix.push_back(next);
        extend_propagation(by_src, prefix, period, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<Propagation> periodic_propagations(const Protocol& p,
                                               std::size_t period) {
    std::vector<Propagation> out;
    if (period == 0) {
        return out;
    }
    std::map<Value, std::vector<Action>> by_src;
    for (const Action& act : p.actions) {
        by_src[act.a].push_back(act); // set order keeps each list sorted
    }
    std::vector<Action> prefix;
    for (const auto& [src, starts] : by_src) {
        (void)src;
        for (const Action& first : starts) {
            prefix.assign(1, first);
            extend_propagation(by_src, prefix, period, out);
        }
    }
    return out; // ascending first action + ascending continuations = sorted
}

bool found(const SearchResult& r) {
    return std::holds_alternative<FoundWitness>(r);
}

const LivelockWitness& witness(const SearchResult& r) {
    return std::get<FoundWitness>(r).witness;
}

namespace {

// Depth-first search for a simple cycle of length exactly m in the leads
// graph over `props`, restricted to indices >= path.front() so that every
// cycle is found once, anchored at its smallest member. Neighbors ascending:
// the first cycle found is lexicographically smallest for this anchor.
bool find_cycle(const std::vector<Propagation>& props, std::size_t m,
                std::vector<std::size_t>& path, std::vector<char>& in_path) {
    if (path.size() == m) {
        return leads(props[path.back()], props[path.front()]);
    }
    for (std::size_t j = path.front() + 1; j < props.size(); ++j) {
        if (in_path[j] || !leads(props[path.back()], props[j])) {
            continue;
        }
        path.push_back(j);
        in_path[j] = 1;
        if (find_cycle(props, m, path, in_path)) {
            return true;
        }
        in_path[j] = 0;
        path.pop_back();
    }
    return false;
}

} // namespace

SearchResult find_circular_leads(const Protocol& p, std::size_t max_period,
                                 std::size_t max_count) {
    for (std::size_t n = 1; n <= max_period; ++n) {
        std::vector<Propagation> props = periodic_propagations(p, n);
        if (props.size() < 2) {
            continue;
        }
        for (std::size_t m = 2; m <= max_count; ++m) {
            if (m > props.size()) {
                break;
            }
            std::vector<char> in_path(props.size(), 0);
            for (std::size_t start = 0; start < props.size(); ++start) {
                std::vector<std::size_t> path{start};
                in_path.assign(props.size(), 0);
                in_path[start] = 1;
                if (find_cycle(props, m, path, in_path)) {
                    LivelockWitness w;
                    w.period = n;
                    for (std::size_t idx : path) {
                        w.propagations.push_back(props[idx]);
                    }
                    return FoundWitness{std::move(w)};
                }
            }
        }
    }
    return NoneWithinBounds{max_period, max_count};
}

bool structurally_livelock_free(const Protocol& p) {
    graphs::LabeledGraph g = p.action_graph();
    graphs::LabeledGraph stripped(p.domain);
    std::set<Value> loop_vertices;
    for (const graphs::Arc& a : g.arcs()) {
        if (a.src == a.dst) {
            loop_vertices.insert(a.src);
        } else {
            stripped.add_arc(a.src, a.dst, a.label);
        }
    }
    return loop_vertices.size() <= 1 &&
           graphs::cycle_vertices(stripped).empty();
}

std::string LivelockWitness::to_json() const {
    using nlohmann::json;
    json doc;
    doc["m"] = propagations.size();
    doc["n"] = period;
    json props = json::array();
    for (const Propagation& prop : propagations) {
        json seq = json::array();
        for (const Action& act : prop.actions) {
            seq.push_back(json::array({act.a, act.b, act.c}));
        }
        props.push_back(seq);
    }
    doc["propagations"] = props;
    return doc.dump();
}

} // namespace uniring::livelock
