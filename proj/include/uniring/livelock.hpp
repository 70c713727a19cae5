#pragma once

#include <string>
#include <variant>
#include <vector>

#include "uniring/protocol.hpp"

namespace uniring::livelock {

// A periodic propagation of period n: a sequence of n actions whose
// source/destination values chain into a closed walk of the action graph,
// i.e. actions (a_0,b_0,c_0)..(a_{n-1},b_{n-1},c_{n-1}) with c_j = a_{j+1
// mod n}. Such a sequence describes a disturbance travelling around the
// ring forever, one process at a time.
struct Propagation {
    std::vector<Action> actions;

    std::size_t period() const { return actions.size(); }
    auto operator<=>(const Propagation&) const = default;
};

// All periodic propagations of the given period, in lexicographic order of
// their action sequences. Rotations of one closed walk are distinct
// propagations (they differ in which process fires first).
std::vector<Propagation> periodic_propagations(const Protocol& p,
                                               std::size_t period);

// Action x leads action y iff firing x at process i produces exactly the
// local state that enables y at process i+1, i.e. y's middle (guard) value
// equals x's written value.
bool leads(const Action& x, const Action& y);

// Propagation X leads propagation Y iff they have equal period and
// X.actions[j] leads Y.actions[j] for every j.
bool leads(const Propagation& x, const Propagation& y);

// A certificate that some ring size admits an infinite execution: m
// distinct propagations of equal period where each leads the next
// cyclically, so the disturbances can chase each other around a large
// enough ring forever. ring_size() is the certificate's nominal size
// (period times m); the smallest ring that actually exhibits the loop may
// differ, so fixed-size verification complements rather than replaces this
// search.
struct LivelockWitness {
    std::size_t period = 0;                 // n
    std::vector<Propagation> propagations;  // length m >= 2, cyclic leads

    std::size_t ring_size() const { return period * propagations.size(); }
    std::string to_json() const;
};

struct FoundWitness {
    LivelockWitness witness;
};
struct NoneWithinBounds {
    std::size_t max_period = 0;
    std::size_t max_count = 0;
};
using SearchResult = std::variant<FoundWitness, NoneWithinBounds>;

bool found(const SearchResult& r);
const LivelockWitness& witness(const SearchResult& r);

// Searches for a livelock certificate: for each period n = 1..max_period,
// builds the leads graph over all period-n propagations and looks for a
// simple cycle of length m in [2, max_count]. Periods ascending, then cycle
// lengths ascending, then lexicographically smallest propagation sequence;
// the first hit is returned. Propagations on a cycle are pairwise distinct;
// a single self-leading propagation is not reported (a self-disabling
// action cannot lead itself, and spacing one disturbance needs m >= 2).
SearchResult find_circular_leads(const Protocol& p, std::size_t max_period,
                                 std::size_t max_count);

// Conservative structural guarantee: after deleting self-loop arcs, the
// action graph is acyclic, and all self-loops sit at a single vertex. Then
// no closed walk mixes two distinct values, every propagation repeats one
// self-loop action, and a self-disabling action cannot lead itself -- so no
// circular-leads certificate exists at any period.
bool structurally_livelock_free(const Protocol& p);

} // namespace uniring::livelock
