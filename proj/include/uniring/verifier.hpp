#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "uniring/protocol.hpp"
#include "uniring/relation.hpp"
#include "uniring/spec.hpp"

namespace uniring::verifier {

// A global state of a ring of n processes: value of variable x_i at index i.
// Process i guards on (x_{i-1 mod n}, x_i) and writes x_i.
using RingState = std::vector<Value>;

// True iff every locality (x_{i-1}, x_i) of the ring lies in rel.
bool holds_on(const LocalityRelation& rel, const RingState& state);

// States a process may move to, ascending by the index of the process that
// fires. Interleaving semantics: exactly one enabled process fires per step.
std::vector<RingState> successors(const Protocol& p, const RingState& state);

struct VerifierOptions {
    // Abort with BudgetExceeded if the state space M^n exceeds this bound.
    std::uint64_t max_states = std::uint64_t{1} << 24;
};

// All ring-size-n states satisfying rel, ascending in the base-M encoding
// with index 0 as the least significant digit.
std::vector<RingState> predicate_states(const LocalityRelation& rel, int n,
                                        const VerifierOptions& options = {});

// Syntactic protocol health: at most one action per guard pair (a,b), and
// no action's result re-enables another action at the same process (no
// (a,b,c) together with (a,c,d); in particular no b == c).
struct WellFormedReport {
    bool deterministic = true;
    bool self_disabling = true;
    std::vector<std::pair<Action, Action>> conflicts;

    bool ok() const { return deterministic && self_disabling; }
};
WellFormedReport well_formed(const Protocol& p);

// Verdict of an explicit-state reachability check.
struct Holds {};
struct DeadlockCounterexample {
    // Execution from an R-state to a state with no enabled process,
    // never entering Q.
    std::vector<RingState> path;
};
struct LivelockCounterexample {
    // Execution from an R-state to a cycle avoiding Q forever. stem ends at
    // loop.front(); loop.back() has loop.front() among its successors.
    std::vector<RingState> stem;
    std::vector<RingState> loop;
};
using Verdict = std::variant<Holds, DeadlockCounterexample, LivelockCounterexample>;

bool verdict_holds(const Verdict& v);
std::string verdict_to_json(const Verdict& v, int n);

// Decides "from every R-state, every execution reaches a Q-state" on the
// ring of size n (n >= 2; smaller rings have no two distinct neighbours and
// are rejected with DomainError). Q-states are absorbing for the purpose of
// the check: the search explores the Q-avoiding region reachable from R and
// reports a deadlock (preferred) or a livelock inside it. Counterexample
// selection is deterministic: breadth-first over states ascending in the
// base-M encoding, successors ascending by process index; a livelock is
// reported at the smallest-encoded state on a reachable Q-avoiding cycle.
Verdict check_leadsto(const Protocol& p, const ProblemSpec& spec, int n,
                      const VerifierOptions& options = {});

// check_leadsto with R = the full relation: self-stabilization to Q on the
// size-n ring (convergence from arbitrary initial states).
Verdict check_convergence(const Protocol& p, const LocalityRelation& q, int n,
                          const VerifierOptions& options = {});

// Is the set of rel-states closed under protocol steps on the size-n ring?
struct ClosureResult {
    bool closed = true;
    // A rel-state and its successor outside rel, when not closed.
    std::vector<RingState> violation;
};
ClosureResult check_closure(const Protocol& p, const LocalityRelation& rel,
                            int n, const VerifierOptions& options = {});

} // namespace uniring::verifier
