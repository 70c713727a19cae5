#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "uniring/graphs.hpp"
#include "uniring/types.hpp"

namespace uniring {

using graphs::InTree;

// One template action of the symmetric process:
//   x_{i-1} = a  &&  x_i = b   ->   x_i := c
// Every process runs the same action set with its own index substituted.
struct Action {
    Value a = 0; // required predecessor value
    Value b = 0; // required own value (the guard's self part)
    Value c = 0; // new own value

    friend auto operator<=>(const Action&, const Action&) = default;
};

// How the synthesized action graph was assembled; kept on the protocol so
// that synthesis runs are explainable and reproducible.
struct Provenance {
    Value gamma = 0;                       // the chosen sink value
    InTree tau;                            // spanning tree of the cycle core
    InTree tau_prime;                      // after dropping unreachable leaves
    InTree tau_second;                     // full skeleton (with added arcs)
    std::set<Value> skeleton_leaves;       // leaves of the final skeleton
    std::map<std::pair<Value, Value>, std::set<Value>> labels; // arc -> guards
};

// A set of template actions (the per-process transition function).
// Well-formedness (determinism: unique (a,b) guards; self-disabling: no
// (a,b,c) together with (a,c,d)) is checked by the verifier, not enforced
// on construction, so hand-written inputs can be loaded and then diagnosed.
struct Protocol {
    Domain domain;
    std::set<Action> actions;
    std::optional<Value> sink;             // gamma, when known
    std::optional<Provenance> provenance;  // full trace, synthesis only

    explicit Protocol(Domain d) : domain(d) {}
    Protocol(Domain d, std::set<Action> acts)
        : domain(d), actions(std::move(acts)) {}

    // The transition function: delta(a,b) = c when an action (a,b,c) exists.
    std::optional<Value> delta(Value a, Value b) const;

    // The action graph: arc a->c labeled b per action.
    graphs::LabeledGraph action_graph() const;
};

// JSON form: {"domain": M, "gamma": g, "actions": [[a,b,c], ...]} with the
// actions sorted lexicographically. "gamma" is optional on input (hand-made
// fixtures may omit it). Unknown keys raise SyntaxError; values outside the
// domain raise DomainError.
Protocol parse_protocol(std::string_view text);
std::string serialize_protocol(const Protocol& p);
Protocol load_protocol_file(const std::string& path);

} // namespace uniring
