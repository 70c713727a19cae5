#pragma once

#include <string>

#include "uniring/protocol.hpp"
#include "uniring/spec.hpp"

namespace uniring::exporters {

enum class DotKind {
    LocalityR, // arcs of the r-graph
    LocalityQ, // arcs of the q-graph
    Action,    // one arc per action, guard value as edge label
};

// Graphviz digraph rendering. Locality kinds need only the problem spec;
// the action kind needs only the protocol.
std::string export_dot(const ProblemSpec& spec, DotKind kind);
std::string export_dot(const Protocol& p, DotKind kind);

// Promela model of the protocol on a fixed ring size n: byte array x[n],
// one process per index running a guarded do-loop over the actions, an init
// that assigns every x[k] nondeterministically and then starts the ring,
// and an ltl property stating that R (conjunction over all localities)
// leads to Q. A protocol with no actions yields a single `:: false -> skip`
// alternative so the model stays syntactically valid.
std::string export_promela(const Protocol& p, const ProblemSpec& spec, int n);

} // namespace uniring::exporters
