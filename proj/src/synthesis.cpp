#include "uniring/synthesis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "uniring/errors.hpp"
#include "uniring/graphs.hpp"
#include "uniring/verifier.hpp"

namespace uniring::synthesis {

using graphs::InTree;
using graphs::LabeledGraph;

// ===== Outcome helpers =====================================================

bool succeeded(const SynthesisOutcome& o) {
    return std::holds_alternative<Protocol>(o);
}

const Protocol& solution(const SynthesisOutcome& o) {
    return std::get<Protocol>(o);
}

const NoSolution& failure(const SynthesisOutcome& o) {
    return std::get<NoSolution>(o);
}

std::string NoSolution::describe() const {
    std::ostringstream out;
    out << "no solution found";
    for (const FailedAttempt& a : attempts) {
        out << "\n  ";
        if (a.gamma) {
            out << "sink " << *a.gamma << ": ";
        }
        out << a.reason;
    }
    return out.str();
}

// ===== Skeleton construction ===============================================

namespace {

std::string arc_text(Value a, Value c) {
    return "(" + std::to_string(a) + "," + std::to_string(c) + ")";
}

// Leaves of the final skeleton: vertices with no incoming arc once the
// root's self-loop is counted, i.e. tree leaves minus the root.
std::set<Value> skeleton_leaves_of(const InTree& skeleton) {
    std::set<Value> leaves = skeleton.leaves();
    leaves.erase(skeleton.root);
    return leaves;
}

void check_pinned_tree(const InTree& tree, const LabeledGraph& core,
                       Value gamma) {
    std::set<Value> wanted = {gamma};
    for (const graphs::Arc& a : core.arcs()) {
        wanted.insert(a.src);
        wanted.insert(a.dst);
    }
    if (tree.root != gamma || !tree.valid() || tree.vertices() != wanted) {
        throw DomainError(
            "pinned tree is not a spanning in-tree of the cycle core rooted "
            "at " +
            std::to_string(gamma));
    }
    for (const auto& [child, parent] : tree.parent) {
        if (!core.has_arc(child, parent)) {
            throw DomainError("pinned tree arc " + arc_text(child, parent) +
                              " is not an arc of the cycle core");
        }
    }
}

struct CandidateFailure {
    std::string reason;
};

struct Candidate {
    Protocol protocol;
};

// One full skeleton-plus-labeling attempt for a fixed sink value.
std::variant<Candidate, CandidateFailure> attempt_gamma(
    const ProblemSpec& spec, Value gamma, const std::set<Value>& r_cycles,
    const SynthesisOptions& options) {
    const int m = spec.domain.size;
    LabeledGraph g_q = graphs::locality_graph(spec.q);

    // Cycle core around the sink and a spanning in-tree of it.
    LabeledGraph core = graphs::cycle_core(g_q, gamma);
    std::set<Value> core_set = graphs::core_vertices(g_q, gamma);
    InTree tau;
    if (options.tree) {
        check_pinned_tree(*options.tree, core, gamma);
        tau = *options.tree;
    } else {
        tau = graphs::spanning_in_tree(core, gamma);
    }

    // Values that can never occur inside an R-state (not on any r-cycle).
    std::set<Value> outside_r;
    for (Value v = 0; v < m; ++v) {
        if (r_cycles.count(v) == 0) {
            outside_r.insert(v);
        }
    }

    // Drop the outgoing arc of every tree leaf that lies outside every
    // r-cycle; those vertices leave the tree.
    std::set<Value> dropped;
    for (Value v : tau.leaves()) {
        if (outside_r.count(v) != 0) {
            dropped.insert(v);
        }
    }
    InTree tau_prime = tau;
    for (Value v : dropped) {
        tau_prime.parent.erase(v); // erasing the root's absent arc is a no-op
    }

    // Attach every remaining outside vertex directly to the sink, unless the
    // move would land inside an R-locality.
    InTree skeleton = tau_prime;
    for (Value v = 0; v < m; ++v) {
        if (core_set.count(v) != 0 || dropped.count(v) != 0) {
            continue;
        }
        if (!spec.r.contains(v, gamma)) {
            skeleton.parent[v] = gamma;
        }
    }

    // Vertices blocked by r(v, sink) are attached to a current skeleton
    // leaf instead: the largest-numbered leaf l with l != sink, !r(v,l) and
    // !q(v,l); a vertex with no admissible leaf stays detached.
    for (Value v = 0; v < m; ++v) {
        if (v == gamma || dropped.count(v) != 0 ||
            skeleton.parent.count(v) != 0 || !spec.r.contains(v, gamma)) {
            continue;
        }
        std::set<Value> leaves = skeleton_leaves_of(skeleton);
        std::optional<Value> choice;
        for (Value l : leaves) {
            if (l != gamma && !spec.r.contains(v, l) && !spec.q.contains(v, l)) {
                choice = l; // ascending scan: the last hit is the largest
            }
        }
        if (choice) {
            skeleton.parent[v] = *choice;
        }
    }

    // The sink's self-loop counts as its incoming arc; some remaining leaf
    // must be reachable inside R or every R-execution deadlocks at once.
    std::set<Value> final_leaves = skeleton_leaves_of(skeleton);
    bool covered = std::any_of(final_leaves.begin(), final_leaves.end(),
                               [&](Value l) { return r_cycles.count(l) != 0; });
    if (!covered) {
        return CandidateFailure{
            "no skeleton leaf lies on a cycle of the r-graph"};
    }

    auto labeled = label_tree(skeleton, spec);
    if (const auto* fail = std::get_if<LabelingFailure>(&labeled)) {
        return CandidateFailure{"arc " +
                                arc_text(fail->arc.first, fail->arc.second) +
                                " admits no guard label"};
    }
    Candidate candidate{std::move(std::get<Protocol>(labeled))};
    Provenance& prov = *candidate.protocol.provenance;
    prov.tau = tau;
    prov.tau_prime = tau_prime;
    return candidate;
}

} // namespace

// ===== Labeling ============================================================

std::variant<Protocol, LabelingFailure> label_tree(const InTree& skeleton,
                                                   const ProblemSpec& spec) {
    const Value gamma = skeleton.root;
    std::set<Value> leaves = skeleton_leaves_of(skeleton);

    std::vector<std::pair<Value, Value>> arcs;
    for (const auto& [child, parent] : skeleton.parent) {
        arcs.emplace_back(child, parent);
    }
    arcs.emplace_back(gamma, gamma);

    Protocol p(spec.domain);
    Provenance prov;
    prov.gamma = gamma;
    prov.tau_second = skeleton;
    prov.skeleton_leaves = leaves;
    for (const auto& [a, c] : arcs) {
        std::set<Value> labels;
        bool is_leaf_arc = leaves.count(a) != 0;
        for (Value b = 0; b < spec.domain.size; ++b) {
            if (b == c || spec.q.contains(a, b)) {
                continue;
            }
            if (is_leaf_arc && !spec.r.contains(a, b)) {
                continue;
            }
            labels.insert(b);
        }
        if (labels.empty()) {
            return LabelingFailure{{a, c}};
        }
        for (Value b : labels) {
            p.actions.insert(Action{a, b, c});
        }
        prov.labels[{a, c}] = std::move(labels);
    }
    p.sink = gamma;
    p.provenance = std::move(prov);
    return p;
}

// ===== Main driver =========================================================

SynthesisOutcome syn_leadsto(const ProblemSpec& spec,
                             const SynthesisOptions& options) {
    validate_spec(spec);
    const int m = spec.domain.size;
    std::set<Value> r_cycles =
        graphs::cycle_vertices(graphs::locality_graph(spec.r));

    std::vector<Value> candidates;
    if (options.gamma) {
        if (!spec.domain.contains(*options.gamma)) {
            throw DomainError("pinned sink " + std::to_string(*options.gamma) +
                              " outside domain of size " + std::to_string(m));
        }
        candidates.push_back(*options.gamma);
    } else {
        for (Value g = 0; g < m; ++g) {
            if (spec.q.contains(g, g)) {
                candidates.push_back(g);
            }
        }
    }

    NoSolution failure_trace;
    if (candidates.empty()) {
        failure_trace.attempts.push_back(
            {std::nullopt, "no sink candidate: q has no self-loop"});
        return failure_trace;
    }

    for (Value gamma : candidates) {
        if (!spec.q.contains(gamma, gamma)) {
            failure_trace.attempts.push_back(
                {gamma, "pinned sink lacks a q self-loop"});
            continue;
        }
        auto outcome = attempt_gamma(spec, gamma, r_cycles, options);
        if (const auto* fail = std::get_if<CandidateFailure>(&outcome)) {
            failure_trace.attempts.push_back({gamma, fail->reason});
            continue;
        }
        Protocol candidate = std::move(std::get<Candidate>(outcome).protocol);

        // Independent safety net: re-verify at small ring sizes before
        // accepting; a refuted candidate fails this sink.
        bool refuted = false;
        for (int n = 2; n <= options.selfcheck_max_n && !refuted; ++n) {
            verifier::Verdict verdict =
                verifier::check_leadsto(candidate, spec, n);
            if (!verifier::verdict_holds(verdict)) {
                failure_trace.attempts.push_back(
                    {gamma, "self-check refuted the candidate on the ring of "
                            "size " +
                                std::to_string(n)});
                refuted = true;
            }
        }
        if (refuted) {
            continue;
        }
        return candidate;
    }
    return failure_trace;
}

bool exists_solution(const ProblemSpec& spec) {
    return succeeded(syn_leadsto(spec));
}

bool r_guard_leaf_coverage(const Protocol& p, const ProblemSpec& spec) {
    if (!p.provenance) {
        throw Error("protocol carries no synthesis provenance");
    }
    std::set<Value> r_cycles =
        graphs::cycle_vertices(graphs::locality_graph(spec.r));
    for (Value leaf : p.provenance->skeleton_leaves) {
        if (r_cycles.count(leaf) == 0) {
            continue;
        }
        bool has_r_guard =
            std::any_of(p.actions.begin(), p.actions.end(), [&](const Action& act) {
                return act.a == leaf && spec.r.contains(act.a, act.b);
            });
        if (!has_r_guard) {
            return false;
        }
    }
    return true;
}

// ===== Multi-predicate drivers =============================================

namespace {

void merge_failure(NoSolution& into, std::size_t index,
                   const NoSolution& from) {
    for (const FailedAttempt& a : from.attempts) {
        into.attempts.push_back(
            {a.gamma, "component " + std::to_string(index) + ": " + a.reason});
    }
}

} // namespace

MultiOutcome syn_disjunctive_r(const std::vector<ProblemSpec>& specs,
                               const SynthesisOptions& options) {
    if (specs.size() < 2) {
        throw DomainError("disjunctive synthesis needs at least two parts");
    }
    for (const ProblemSpec& s : specs) {
        if (s.domain != specs.front().domain || !(s.q == specs.front().q)) {
            throw DomainError(
                "disjunctive parts must share the domain and the goal "
                "relation");
        }
    }
    NoSolution merged;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        try {
            SynthesisOutcome outcome = syn_leadsto(specs[i], options);
            if (succeeded(outcome)) {
                return {std::move(outcome), i};
            }
            merge_failure(merged, i, failure(outcome));
        } catch (const Error& e) {
            merged.attempts.push_back(
                {std::nullopt,
                 "component " + std::to_string(i) + " rejected: " + e.what()});
        }
    }
    return {std::move(merged), std::nullopt};
}

SynthesisOutcome syn_conjunctive_r(const std::vector<LocalityRelation>& rs,
                                   const LocalityRelation& q, Domain domain,
                                   const SynthesisOptions& options) {
    if (rs.size() < 2) {
        throw DomainError("conjunctive synthesis needs at least two parts");
    }
    LocalityRelation combined = rs.front();
    for (std::size_t i = 1; i < rs.size(); ++i) {
        combined = combined.intersect(rs[i]);
    }
    return syn_leadsto(ProblemSpec(domain, combined, q), options);
}

SynthesisOutcome syn_conjunctive_q(const LocalityRelation& r,
                                   const LocalityRelation& q1,
                                   const LocalityRelation& q2, Domain domain,
                                   const SynthesisOptions& options) {
    return syn_leadsto(ProblemSpec(domain, r, q1.intersect(q2)), options);
}

MultiOutcome syn_disjunctive_q(const LocalityRelation& r,
                               const LocalityRelation& q1,
                               const LocalityRelation& q2, Domain domain,
                               const SynthesisOptions& options) {
    NoSolution merged;
    std::size_t index = 0;
    for (const LocalityRelation* q : {&q1, &q2}) {
        try {
            SynthesisOutcome outcome =
                syn_leadsto(ProblemSpec(domain, r, *q), options);
            if (succeeded(outcome)) {
                return {std::move(outcome), index};
            }
            merge_failure(merged, index, failure(outcome));
        } catch (const Error& e) {
            merged.attempts.push_back(
                {std::nullopt, "component " + std::to_string(index) +
                                   " rejected: " + e.what()});
        }
        ++index;
    }
    return {std::move(merged), std::nullopt};
}

// ===== Explanations ========================================================

namespace {

std::string tree_text(const InTree& tree) {
    if (tree.parent.empty()) {
        return "root " + std::to_string(tree.root) + " only";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [child, parent] : tree.parent) {
        if (!first) {
            out << ", ";
        }
        first = false;
        out << child << "->" << parent;
    }
    return out.str();
}

std::string value_set_text(const std::set<Value>& values) {
    if (values.empty()) {
        return "none";
    }
    std::ostringstream out;
    bool first = true;
    for (Value v : values) {
        if (!first) {
            out << ", ";
        }
        first = false;
        out << v;
    }
    return out.str();
}

} // namespace

std::string describe_provenance(const Protocol& p) {
    if (!p.provenance) {
        return "no synthesis provenance recorded\n";
    }
    const Provenance& prov = *p.provenance;
    std::ostringstream out;
    out << "sink: " << prov.gamma << "\n";
    out << "spanning tree of the cycle core (child->parent): "
        << tree_text(prov.tau) << "\n";
    out << "after dropping leaves unreachable within R: "
        << tree_text(prov.tau_prime) << "\n";
    out << "final skeleton (plus self-loop at the sink): "
        << tree_text(prov.tau_second) << "\n";
    out << "skeleton leaves: " << value_set_text(prov.skeleton_leaves) << "\n";
    out << "guard sets per arc:\n";
    for (const auto& [arc, labels] : prov.labels) {
        out << "  " << arc.first << "->" << arc.second << ": {";
        bool first = true;
        for (Value b : labels) {
            if (!first) {
                out << ",";
            }
            first = false;
            out << b;
        }
        out << "}\n";
    }
    return out.str();
}

} // namespace uniring::synthesis
