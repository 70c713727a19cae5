#include "uniring/verifier.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "uniring/errors.hpp"

namespace uniring::verifier {

namespace {

using Code = std::uint64_t;

// M^n, guarded against exceeding the exploration budget.
Code state_space_size(int m, int n, Code limit) {
    Code total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > limit / static_cast<Code>(m)) {
            throw BudgetExceeded("state space " + std::to_string(m) + "^" +
                                 std::to_string(n) +
                                 " exceeds the exploration budget of " +
                                 std::to_string(limit) + " states");
        }
        total *= static_cast<Code>(m);
    }
    return total;
}

// Base-M encoding with index 0 as the least significant digit; iterating
// codes 0..M^n-1 therefore enumerates states in a fixed canonical order.
RingState decode(Code code, int m, int n) {
    RingState state(n);
    for (int i = 0; i < n; ++i) {
        state[i] = static_cast<Value>(code % static_cast<Code>(m));
        code /= static_cast<Code>(m);
    }
    return state;
}

Code encode(const RingState& state, int m) {
    Code code = 0;
    for (std::size_t i = state.size(); i-- > 0;) {
        code = code * static_cast<Code>(m) + static_cast<Code>(state[i]);
    }
    return code;
}

struct Explorer {
    const Protocol& p;
    int m;
    int n;
    Code total;
    std::vector<int> delta; // delta[a*m+b] = c or -1

    Explorer(const Protocol& proto, int ring_size, Code space)
        : p(proto), m(proto.domain.size), n(ring_size), total(space),
          delta(m * m, -1) {
        for (const Action& act : p.actions) {
            delta[act.a * m + act.b] = act.c;
        }
    }

    // Successor codes in ascending process order (duplicates possible when
    // two processes produce the same global state).
    std::vector<Code> successor_codes(Code code) const {
        RingState state = decode(code, m, n);
        std::vector<Code> out;
        for (int i = 0; i < n; ++i) {
            Value pred = state[(i + n - 1) % n];
            int target = delta[pred * m + state[i]];
            if (target >= 0) {
                Value saved = state[i];
                state[i] = static_cast<Value>(target);
                out.push_back(encode(state, m));
                state[i] = saved;
            }
        }
        return out;
    }
};

bool satisfies(const std::vector<char>& rel, int m, const RingState& state) {
    int n = static_cast<int>(state.size());
    for (int i = 0; i < n; ++i) {
        if (!rel[state[(i + n - 1) % n] * m + state[i]]) {
            return false;
        }
    }
    return true;
}

std::vector<char> pair_table(const LocalityRelation& rel) {
    int m = rel.domain().size;
    std::vector<char> table(m * m, 0);
    for (const auto& [a, b] : rel.pairs()) {
        table[a * m + b] = 1;
    }
    return table;
}

// Path from a search root (no recorded parent) to `target`, inclusive.
std::vector<RingState> unwind(
    const std::unordered_map<Code, Code>& parent_of, Code target, int m,
    int n) {
    std::vector<Code> codes{target};
    Code cursor = target;
    for (auto it = parent_of.find(cursor); it != parent_of.end();
         it = parent_of.find(cursor)) {
        cursor = it->second;
        codes.push_back(cursor);
    }
    std::vector<RingState> path;
    path.reserve(codes.size());
    for (auto it = codes.rbegin(); it != codes.rend(); ++it) {
        path.push_back(decode(*it, m, n));
    }
    return path;
}

// Strongly connected components of the explored region's successor graph,
// as component ids. Iterative Tarjan over the (sparse) region.
std::unordered_map<Code, int> region_components(
    const std::vector<Code>& region,
    const std::unordered_map<Code, std::vector<Code>>& succ) {
    std::unordered_map<Code, int> index, lowlink, component;
    std::unordered_map<Code, bool> on_stack;
    std::vector<Code> stack;
    int next_index = 0;
    int next_component = 0;

    for (Code root : region) {
        if (index.count(root) != 0) {
            continue;
        }
        std::vector<std::pair<Code, std::size_t>> work{{root, 0}};
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!work.empty()) {
            auto& [v, pos] = work.back();
            const std::vector<Code>& out = succ.at(v);
            if (pos < out.size()) {
                Code w = out[pos++];
                auto it = index.find(w);
                if (it == index.end()) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    work.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], it->second);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    int id = next_component++;
                    Code w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        component[w] = id;
                    } while (w != v);
                }
                Code done = v;
                work.pop_back();
                if (!work.empty()) {
                    Code up = work.back().first;
                    lowlink[up] = std::min(lowlink[up], lowlink[done]);
                }
            }
        }
    }
    return component;
}

} // namespace

// ===== Basic state predicates ==============================================

bool holds_on(const LocalityRelation& rel, const RingState& state) {
    if (state.empty()) {
        return true;
    }
    std::size_t n = state.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!rel.contains(state[(i + n - 1) % n], state[i])) {
            return false;
        }
    }
    return true;
}

std::vector<RingState> successors(const Protocol& p, const RingState& state) {
    int n = static_cast<int>(state.size());
    std::vector<RingState> out;
    RingState next = state;
    for (int i = 0; i < n; ++i) {
        Value pred = state[(i + n - 1) % n];
        if (auto target = p.delta(pred, state[i])) {
            next[i] = *target;
            out.push_back(next);
            next[i] = state[i];
        }
    }
    return out;
}

std::vector<RingState> predicate_states(const LocalityRelation& rel, int n,
                                        const VerifierOptions& options) {
    if (n < 1) {
        throw DomainError("ring size must be positive");
    }
    int m = rel.domain().size;
    Code total = state_space_size(m, n, options.max_states);
    std::vector<char> table = pair_table(rel);
    std::vector<RingState> out;
    for (Code code = 0; code < total; ++code) {
        RingState state = decode(code, m, n);
        if (satisfies(table, m, state)) {
            out.push_back(std::move(state));
        }
    }
    return out;
}

// ===== Well-formedness =====================================================

WellFormedReport well_formed(const Protocol& p) {
    WellFormedReport report;
    for (auto it = p.actions.begin(); it != p.actions.end(); ++it) {
        auto next = std::next(it);
        if (next != p.actions.end() && next->a == it->a && next->b == it->b) {
            report.deterministic = false;
            report.conflicts.emplace_back(*it, *next);
        }
        // Self-disabling: the written value must not re-enable this process.
        for (const Action& other : p.actions) {
            if (other.a == it->a && other.b == it->c) {
                report.self_disabling = false;
                report.conflicts.emplace_back(*it, other);
            }
        }
    }
    return report;
}

// ===== Leads-to check ======================================================

bool verdict_holds(const Verdict& v) {
    return std::holds_alternative<Holds>(v);
}

Verdict check_leadsto(const Protocol& p, const ProblemSpec& spec, int n,
                      const VerifierOptions& options) {
    if (spec.domain != p.domain) {
        throw DomainError("protocol and spec domains differ");
    }
    if (n < 2) {
        throw DomainError("ring size must be at least 2, got " +
                          std::to_string(n));
    }
    int m = p.domain.size;
    Code total = state_space_size(m, n, options.max_states);
    Explorer ex(p, n, total);
    std::vector<char> r_table = pair_table(spec.r);
    std::vector<char> q_table = pair_table(spec.q);

    // Breadth-first closure of the Q-avoiding region reachable from R.
    // Roots ascending; Q-states are absorbing and never entered.
    std::vector<char> visited(total, 0);
    std::deque<Code> queue;
    std::unordered_map<Code, Code> parent_of;
    for (Code code = 0; code < total; ++code) {
        RingState state = decode(code, m, n);
        if (satisfies(r_table, m, state) && !satisfies(q_table, m, state)) {
            visited[code] = 1;
            queue.push_back(code);
        }
    }

    std::vector<Code> region;
    std::optional<Code> deadlock;
    while (!queue.empty()) {
        Code code = queue.front();
        queue.pop_front();
        region.push_back(code);
        std::vector<Code> succ = ex.successor_codes(code);
        if (succ.empty()) {
            if (!deadlock || code < *deadlock) {
                deadlock = code;
            }
            continue;
        }
        for (Code s : succ) {
            if (satisfies(q_table, m, decode(s, m, n))) {
                continue;
            }
            if (!visited[s]) {
                visited[s] = 1;
                parent_of.emplace(s, code);
                queue.push_back(s);
            }
        }
    }
    if (deadlock) {
        return DeadlockCounterexample{unwind(parent_of, *deadlock, m, n)};
    }

    // No deadlock: look for a cycle inside the region (an execution that
    // avoids Q forever). Successor lists restricted to the region.
    std::unordered_map<Code, std::vector<Code>> restricted;
    restricted.reserve(region.size());
    for (Code code : region) {
        std::vector<Code> kept;
        for (Code s : ex.successor_codes(code)) {
            if (visited[s]) {
                kept.push_back(s);
            }
        }
        std::sort(kept.begin(), kept.end());
        kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
        restricted.emplace(code, std::move(kept));
    }

    std::optional<Code> culprit;
    bool culprit_self_loop = false;
    for (Code code : region) {
        const std::vector<Code>& out = restricted.at(code);
        if (std::find(out.begin(), out.end(), code) != out.end()) {
            if (!culprit || code < *culprit) {
                culprit = code;
                culprit_self_loop = true;
            }
        }
    }
    std::unordered_map<Code, int> component;
    if (!culprit) {
        std::vector<Code> ordered = region;
        std::sort(ordered.begin(), ordered.end());
        component = region_components(ordered, restricted);
        std::unordered_map<int, int> size_of;
        for (const auto& [code, id] : component) {
            (void)code;
            ++size_of[id];
        }
        for (Code code : ordered) {
            if (size_of[component[code]] >= 2) {
                culprit = code;
                break;
            }
        }
    }
    if (!culprit) {
        return Holds{};
    }

    LivelockCounterexample cex;
    cex.stem = unwind(parent_of, *culprit, m, n);
    if (culprit_self_loop) {
        cex.loop = {decode(*culprit, m, n)};
        return cex;
    }
    // Shortest cycle back to the culprit inside its component, smallest
    // successors first.
    int home = component[*culprit];
    std::unordered_map<Code, Code> loop_parent;
    std::deque<Code> loop_queue;
    for (Code s : restricted.at(*culprit)) {
        if (component.count(s) != 0 && component[s] == home &&
            loop_parent.emplace(s, *culprit).second) {
            loop_queue.push_back(s);
        }
    }
    std::optional<Code> closed;
    while (!loop_queue.empty() && !closed) {
        Code code = loop_queue.front();
        loop_queue.pop_front();
        if (code == *culprit) {
            closed = code;
            break;
        }
        for (Code s : restricted.at(code)) {
            if (component.count(s) != 0 && component[s] == home &&
                loop_parent.emplace(s, code).second) {
                loop_queue.push_back(s);
            }
        }
    }
    // Reconstruct culprit -> ... -> culprit and drop the final repeat.
    std::vector<Code> cycle{*culprit};
    for (Code cursor = loop_parent.at(*culprit); cursor != *culprit;
         cursor = loop_parent.at(cursor)) {
        cycle.push_back(cursor);
    }
    cycle.push_back(*culprit);
    std::reverse(cycle.begin(), cycle.end());
    cycle.pop_back(); // loop.back() -> loop.front() closes it
    for (Code code : cycle) {
        cex.loop.push_back(decode(code, m, n));
    }
    return cex;
}

Verdict check_convergence(const Protocol& p, const LocalityRelation& q, int n,
                          const VerifierOptions& options) {
    ProblemSpec spec(p.domain, full_relation(p.domain), q);
    return check_leadsto(p, spec, n, options);
}

ClosureResult check_closure(const Protocol& p, const LocalityRelation& rel,
                            int n, const VerifierOptions& options) {
    if (rel.domain() != p.domain) {
        throw DomainError("protocol and relation domains differ");
    }
    if (n < 2) {
        throw DomainError("ring size must be at least 2, got " +
                          std::to_string(n));
    }
    int m = p.domain.size;
    Code total = state_space_size(m, n, options.max_states);
    Explorer ex(p, n, total);
    std::vector<char> table = pair_table(rel);
    for (Code code = 0; code < total; ++code) {
        RingState state = decode(code, m, n);
        if (!satisfies(table, m, state)) {
            continue;
        }
        for (Code s : ex.successor_codes(code)) {
            RingState next = decode(s, m, n);
            if (!satisfies(table, m, next)) {
                return ClosureResult{false, {state, next}};
            }
        }
    }
    return ClosureResult{};
}

// ===== JSON rendering ======================================================

std::string verdict_to_json(const Verdict& v, int n) {
    using nlohmann::json;
    json doc;
    doc["n"] = n;
    auto states_json = [](const std::vector<RingState>& states) {
        json list = json::array();
        for (const RingState& s : states) {
            list.push_back(s);
        }
        return list;
    };
    if (std::holds_alternative<Holds>(v)) {
        doc["verdict"] = "holds";
    } else if (const auto* d = std::get_if<DeadlockCounterexample>(&v)) {
        doc["verdict"] = "deadlock";
        doc["path"] = states_json(d->path);
    } else {
        const auto& l = std::get<LivelockCounterexample>(v);
        doc["verdict"] = "livelock";
        doc["stem"] = states_json(l.stem);
        doc["loop"] = states_json(l.loop);
    }
    return doc.dump();
}

} // namespace uniring::verifier
