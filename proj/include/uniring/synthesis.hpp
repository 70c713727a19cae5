#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uniring/protocol.hpp"
#include "uniring/spec.hpp"

namespace uniring::synthesis {

// One failed attempt at building a protocol. gamma is absent for failures
// that precede candidate selection (e.g. q has no self-loop at all).
struct FailedAttempt {
    std::optional<Value> gamma;
    std::string reason;
};

// All attempts failed; one reason per tried sink candidate.
struct NoSolution {
    std::vector<FailedAttempt> attempts;

    std::string describe() const;
};

// Either a synthesized protocol or the per-candidate failure trace.
using SynthesisOutcome = std::variant<Protocol, NoSolution>;

bool succeeded(const SynthesisOutcome& o);
const Protocol& solution(const SynthesisOutcome& o);
const NoSolution& failure(const SynthesisOutcome& o);

struct SynthesisOptions {
    // Pin the sink value instead of trying candidates in ascending order.
    std::optional<Value> gamma = std::nullopt;

    // Pin the spanning tree of the cycle core (must be a valid in-tree over
    // the core's vertices rooted at the chosen gamma). The default
    // breadth-first tie-break is deterministic but need not coincide with a
    // previously published tree; pinning reproduces any valid choice.
    std::optional<InTree> tree = std::nullopt;

    // Re-verify every candidate protocol with the explicit-state checker at
    // ring sizes 2..selfcheck_max_n before accepting it; a refuted candidate
    // fails its sink value and the search advances. 0 disables the check.
    int selfcheck_max_n = 6;
};

// Synthesizes template actions guaranteeing that every execution from every
// R-state reaches a Q-state, on rings of every size. The action graph of a
// solution is a functional in-forest sinking to the chosen value gamma plus
// a single self-loop at gamma. Precondition: validate_spec(spec) accepted
// (violations raise the corresponding validation error).
//
// Per candidate gamma (ascending over {g | q(g,g)}, or pinned):
//   1. take the cycle core of the q-graph around gamma and a spanning
//      in-tree of it rooted at gamma;
//   2. drop the outgoing arc of every tree leaf that lies on no cycle of
//      the r-graph (such values never occur inside an R-state);
//   3. attach every remaining outside vertex v by an arc v->gamma, unless
//      r(v,gamma) holds (the move would land inside an R-locality);
//   4. attach each v with r(v,gamma) by an arc to a tree leaf l instead,
//      choosing the largest-numbered leaf with l != gamma, !r(v,l) and
//      !q(v,l); v stays detached when no leaf qualifies;
//   5. add the self-loop at gamma; fail this candidate unless some skeleton
//      leaf lies on a cycle of the r-graph;
//   6. label every arc (guard enumeration below) and emit one action per
//      (arc, guard); fail the candidate if any arc gets no guard;
//   7. optionally re-verify at small ring sizes (selfcheck).
SynthesisOutcome syn_leadsto(const ProblemSpec& spec,
                             const SynthesisOptions& options = {});

// Guard labeling of a finished skeleton. Arcs out of leaf vertices get every
// guard b with b != c, r(a,b) and !q(a,b) (they must be able to fire inside
// R-states); all other arcs, including the root self-loop, get every b with
// b != c and !q(a,b). An arc with no admissible guard is a failure.
struct LabelingFailure {
    std::pair<Value, Value> arc;
};
std::variant<Protocol, LabelingFailure> label_tree(const InTree& skeleton,
                                                   const ProblemSpec& spec);

// True iff syn_leadsto yields a solution (the search is exhaustive over
// sink candidates, so a fully failed search decides nonexistence).
bool exists_solution(const ProblemSpec& spec);

// Deadlock-freedom obligation on solutions: every skeleton leaf that lies on
// a cycle of the r-graph carries at least one guard enabled inside R, i.e.
// an action (a,b,c) with r(a,b). Requires provenance.
bool r_guard_leaf_coverage(const Protocol& p, const ProblemSpec& spec);

// Multi-predicate drivers ------------------------------------------------

// Outcome of a driver that tries several sub-problems; `which` is the index
// of the sub-problem that produced the solution.
struct MultiOutcome {
    SynthesisOutcome outcome;
    std::optional<std::size_t> which;
};

// Reach Q from R_1 or R_2 or ...: solve each (R_i, Q) separately; any single
// success suffices, because an execution starting in the union starts in
// some R_i.
MultiOutcome syn_disjunctive_r(const std::vector<ProblemSpec>& specs,
                               const SynthesisOptions& options = {});

// Reach Q from R_1 and R_2 and ...: equivalent to the single problem whose
// r is the pairwise intersection of all given relations.
SynthesisOutcome syn_conjunctive_r(const std::vector<LocalityRelation>& rs,
                                   const LocalityRelation& q, Domain domain,
                                   const SynthesisOptions& options = {});

// Reach Q_1 and Q_2 from R: run with q := q1 intersect q2; sink candidates
// are then exactly the values with q1(g,g) and q2(g,g).
SynthesisOutcome syn_conjunctive_q(const LocalityRelation& r,
                                   const LocalityRelation& q1,
                                   const LocalityRelation& q2, Domain domain,
                                   const SynthesisOptions& options = {});

// Reach Q_1 or Q_2 from R: solve (R,Q_1), then (R,Q_2); first success wins.
MultiOutcome syn_disjunctive_q(const LocalityRelation& r,
                               const LocalityRelation& q1,
                               const LocalityRelation& q2, Domain domain,
                               const SynthesisOptions& options = {});

// Human-readable rendering of a solution's provenance (trees, added arcs,
// per-arc guard sets); used by the CLI's --explain flag.
std::string describe_provenance(const Protocol& p);

} // namespace uniring::synthesis
