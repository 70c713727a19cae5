#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uniring/relation.hpp"
#include "uniring/types.hpp"

namespace uniring {

// A synthesis/verification problem: reach predicate Q from predicate R on a
// symmetric unidirectional ring, where R = forall i. r(x_{i-1}, x_i) and
// Q = forall i. q(x_{i-1}, x_i). The ring size N is deliberately not part of
// the problem; it is supplied to the fixed-size checker only.
struct ProblemSpec {
    Domain domain;
    LocalityRelation r;
    LocalityRelation q;
    std::optional<std::string> name;

    ProblemSpec(Domain d, LocalityRelation r_rel, LocalityRelation q_rel,
                std::optional<std::string> n = std::nullopt)
        : domain(d), r(std::move(r_rel)), q(std::move(q_rel)), name(std::move(n)) {}
};

// Result of validate_spec. A spec is accepted iff the intersection of r and q
// has no cycle (including self-loops) in its locality graph; acceptance means
// the global R and Q are disjoint at every ring size. Acyclic r (or q) means
// the corresponding global predicate is empty at every ring size; that is
// reported as a warning, not a rejection.
struct ValidationReport {
    bool r_has_cycle = false;
    bool q_has_cycle = false;
    std::vector<std::string> warnings; // empty-predicate warnings, if any

    bool accepted = true; // always true when returned (rejection throws)
};

// Validates a problem spec. Throws OverlapError (with a witnessing cycle)
// when the r-and-q intersection graph has a cycle; otherwise returns the
// report.
ValidationReport validate_spec(const ProblemSpec& spec);

// Parses a spec from its JSON form:
//   {
//     "domain": M,              // integer >= 2, required
//     "r": [[a,b], ...]         // or "r_expr": "<expression>", exactly one
//     "q": [[a,b], ...]         // or "q_expr": "<expression>", exactly one
//     "name": "..."             // optional
//   }
// Unknown keys, both forms for one relation, or malformed shapes raise
// SyntaxError; out-of-domain values raise DomainError; bad expressions raise
// ExprError.
ProblemSpec parse_spec(std::string_view text);

// Canonical JSON rendering (sorted keys, relations as sorted pair lists).
// parse_spec(serialize_spec(s)) reproduces s exactly (name included).
std::string serialize_spec(const ProblemSpec& spec);

// Convenience: read and parse a spec file. Throws Error on I/O failure.
ProblemSpec load_spec_file(const std::string& path);

} // namespace uniring
