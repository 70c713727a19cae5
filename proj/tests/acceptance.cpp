// Acceptance gate: runs the seven release criteria and prints one PASS/FAIL
// line per criterion (with indented per-fixture detail lines). Exits nonzero
// if any criterion fails. All tolerances are pinned here:
//   - criterion 1: every pinned synthesis run finishes in < 1 s;
//   - criterion 2: all fixture verifications together finish in < 30 s;
//   - criterion 5: every existence decision finishes in < 1 s.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "uniring/errors.hpp"
#include "uniring/expr.hpp"
#include "uniring/graphs.hpp"
#include "uniring/livelock.hpp"
#include "uniring/protocol.hpp"
#include "uniring/relation.hpp"
#include "uniring/spec.hpp"
#include "uniring/synthesis.hpp"
#include "uniring/verifier.hpp"

using namespace uniring;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kFixtureDir = UNIRING_FIXTURE_DIR;

struct Fixture {
    std::string label;
    std::string spec_file;
    std::string protocol_file;
    Value gamma;
    std::vector<int> admissible_sizes;
};

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = {
        {"sum-not-2", "sumnot2.json", "sumnot2-published.json", 2,
         {2, 4, 6, 8}},
        {"sum-two", "sumtwo.json", "sumtwo-published.json", 3, {2, 4, 6, 8}},
        {"parity", "parity.json", "parity-published.json", 2,
         {2, 3, 4, 5, 6, 7, 8}},
        {"agreement", "agreement.json", "agreement-published.json", 1,
         {2, 4, 6, 8}},
    };
    return all;
}

ProblemSpec fixture_spec(const Fixture& f) {
    return load_spec_file(kFixtureDir + "/" + f.spec_file);
}

Protocol fixture_protocol(const Fixture& f) {
    return load_protocol_file(kFixtureDir + "/" + f.protocol_file);
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

struct CriterionResult {
    bool pass = true;
    std::vector<std::string> details;

    void fail(const std::string& detail) {
        pass = false;
        details.push_back(detail);
    }
    void note(const std::string& detail) { details.push_back(detail); }
};

// Shared by criteria 1 and 2: does the protocol hold at every admissible
// ring size of its fixture?
bool holds_at_admissible_sizes(const Protocol& p, const ProblemSpec& spec,
                               const std::vector<int>& sizes,
                               std::string* complaint) {
    for (int n : sizes) {
        verifier::Verdict v = verifier::check_leadsto(p, spec, n);
        if (!verifier::verdict_holds(v)) {
            if (complaint) {
                std::ostringstream out;
                out << "refuted at ring size " << n << ": "
                    << verifier::verdict_to_json(v, n);
                *complaint = out.str();
            }
            return false;
        }
    }
    return true;
}

// Random well-formed problem description; nullopt when validation rejects it.
std::optional<ProblemSpec> random_spec(std::mt19937& rng) {
    int m = std::uniform_int_distribution<int>(2, 4)(rng);
    LocalityRelation r{Domain(m)};
    LocalityRelation q{Domain(m)};
    std::bernoulli_distribution pick_r(0.3);
    std::bernoulli_distribution pick_q(0.35);
    for (Value a = 0; a < m; ++a) {
        for (Value b = 0; b < m; ++b) {
            if (pick_r(rng)) {
                r.add(a, b);
            }
            if (pick_q(rng)) {
                q.add(a, b);
            }
        }
    }
    ProblemSpec spec(Domain(m), r, q);
    try {
        validate_spec(spec);
    } catch (const Error&) {
        return std::nullopt;
    }
    return spec;
}

// ===== criterion 1 =========================================================
// Pinned synthesis reproduces the bundled reference action sets exactly; a
// tie-break divergence is tolerated iff both the synthesized and the
// reference set hold at every admissible ring size <= 8.

CriterionResult criterion_golden_fixtures() {
    CriterionResult result;
    for (const Fixture& f : fixtures()) {
        ProblemSpec spec = fixture_spec(f);
        Protocol reference = fixture_protocol(f);

        synthesis::SynthesisOptions options;
        options.gamma = f.gamma;
        if (f.label == "sum-not-2") {
            // Documented tie-break: the reference run used this spanning
            // tree of the goal graph's cycle core.
            InTree tree;
            tree.root = 2;
            tree.parent = {{3, 2}, {0, 3}, {1, 3}};
            options.tree = tree;
        }

        Clock::time_point start = Clock::now();
        synthesis::SynthesisOutcome outcome = synthesis::syn_leadsto(spec, options);
        double elapsed = ms_since(start);
        if (elapsed >= 1000.0) {
            result.fail(f.label + ": synthesis took " +
                        std::to_string(elapsed) + " ms (limit 1000)");
            continue;
        }
        if (!synthesis::succeeded(outcome)) {
            result.fail(f.label + ": synthesis failed: " +
                        synthesis::failure(outcome).describe());
            continue;
        }
        const Protocol& made = synthesis::solution(outcome);
        if (made.actions == reference.actions) {
            std::ostringstream line;
            line << f.label << ": exact match (" << elapsed << " ms)";
            result.note(line.str());
            continue;
        }
        // Fallback: both sets must independently pass the size sweep.
        std::string complaint;
        bool synthesized_ok = holds_at_admissible_sizes(
            made, spec, f.admissible_sizes, &complaint);
        if (!synthesized_ok) {
            result.fail(f.label + ": synthesized set " + complaint);
            continue;
        }
        bool reference_ok = holds_at_admissible_sizes(
            reference, spec, f.admissible_sizes, &complaint);
        if (!reference_ok) {
            result.fail(f.label +
                        ": no exact match and the reference set is itself "
                        "unsound (" +
                        complaint + ")");
            continue;
        }
        result.note(f.label + ": fallback accepted (both the synthesized "
                              "and the reference set hold at all admissible "
                              "sizes)");
    }
    return result;
}

// ===== criterion 2 =========================================================
// The bundled reference action sets hold at every admissible ring size <= 8;
// the whole sweep stays under 30 s.

CriterionResult criterion_reference_soundness() {
    CriterionResult result;
    Clock::time_point start = Clock::now();
    for (const Fixture& f : fixtures()) {
        ProblemSpec spec = fixture_spec(f);
        Protocol reference = fixture_protocol(f);
        std::string complaint;
        if (holds_at_admissible_sizes(reference, spec, f.admissible_sizes,
                                      &complaint)) {
            result.note(f.label + ": holds at all admissible sizes <= 8");
        } else {
            result.fail(f.label + ": " + complaint);
        }
    }
    double elapsed = ms_since(start);
    if (elapsed >= 30000.0) {
        result.fail("sweep took " + std::to_string(elapsed) +
                    " ms (limit 30000)");
    } else {
        std::ostringstream line;
        line << "total sweep time " << elapsed << " ms";
        result.note(line.str());
    }
    return result;
}

// ===== criterion 3 =========================================================
// Direct predicate-state enumeration equals the closed-walk expansion union
// for every domain size <= 4 and ring size <= 6, over 50 random relations
// per (domain, ring) pair.

CriterionResult criterion_state_equivalence() {
    CriterionResult result;
    std::mt19937 rng(33001);
    long long combos = 0;
    for (int m = 2; m <= 4; ++m) {
        for (int n = 1; n <= 6; ++n) {
            for (int round = 0; round < 50; ++round) {
                LocalityRelation rel{Domain(m)};
                std::bernoulli_distribution pick(0.4);
                for (Value a = 0; a < m; ++a) {
                    for (Value b = 0; b < m; ++b) {
                        if (pick(rng)) {
                            rel.add(a, b);
                        }
                    }
                }
                std::set<std::vector<Value>> expanded;
                graphs::LabeledGraph g = graphs::locality_graph(rel);
                for (int len = 1; len <= n; ++len) {
                    if (n % len != 0) {
                        continue;
                    }
                    for (const graphs::ClosedWalk& walk :
                         graphs::closed_walks(g, len)) {
                        for (const std::vector<Value>& s :
                             graphs::walk_states(walk, n)) {
                            expanded.insert(s);
                        }
                    }
                }
                std::vector<verifier::RingState> direct =
                    verifier::predicate_states(rel, n);
                std::set<std::vector<Value>> direct_set(direct.begin(),
                                                        direct.end());
                ++combos;
                if (direct_set != expanded) {
                    std::ostringstream line;
                    line << "mismatch at domain " << m << ", ring size " << n
                         << ", round " << round;
                    result.fail(line.str());
                    return result;
                }
            }
        }
    }
    std::ostringstream line;
    line << combos << " random (relation, size) combinations agreed";
    result.note(line.str());
    return result;
}

// ===== criterion 4 =========================================================
// 200 random solvable problems: every solution the synthesizer returns (its
// built-in small-ring re-check runs at the default depth, as in production)
// must pass the structural obligations: health, structural livelock-freedom,
// leaf coverage, and an empty bounded circular-leads search at (6,6).

CriterionResult criterion_solution_shape() {
    CriterionResult result;
    std::mt19937 rng(44001);
    synthesis::SynthesisOptions options;
    int solutions = 0;
    long long attempts = 0;
    const long long max_attempts = 60000;
    while (solutions < 200 && attempts < max_attempts) {
        ++attempts;
        std::optional<ProblemSpec> spec = random_spec(rng);
        if (!spec) {
            continue;
        }
        synthesis::SynthesisOutcome outcome =
            synthesis::syn_leadsto(*spec, options);
        if (!synthesis::succeeded(outcome)) {
            continue;
        }
        ++solutions;
        const Protocol& p = synthesis::solution(outcome);
        if (!verifier::well_formed(p).ok()) {
            result.fail("solution " + std::to_string(solutions) +
                        " is not well-formed");
            return result;
        }
        if (!livelock::structurally_livelock_free(p)) {
            result.fail("solution " + std::to_string(solutions) +
                        " fails the structural livelock check");
            return result;
        }
        if (!synthesis::r_guard_leaf_coverage(p, *spec)) {
            result.fail("solution " + std::to_string(solutions) +
                        " fails leaf coverage");
            return result;
        }
        livelock::SearchResult search = livelock::find_circular_leads(p, 6, 6);
        if (livelock::found(search)) {
            result.fail("solution " + std::to_string(solutions) +
                        " admits a circular-leads certificate");
            return result;
        }
    }
    if (solutions < 200) {
        result.fail("only " + std::to_string(solutions) +
                    " solutions in " + std::to_string(attempts) +
                    " attempts");
        return result;
    }
    std::ostringstream line;
    line << "200 solutions (from " << attempts
         << " random problems) passed all four checks";
    result.note(line.str());
    return result;
}

// ===== criterion 5 =========================================================
// Existence decisions: false for every goal without a self-loop (exhaustive
// over two-value goals, sampled for three values), true for the four case
// studies; every single decision in < 1 s.

CriterionResult criterion_existence() {
    CriterionResult result;
    double worst_ms = 0.0;
    auto timed_exists = [&](const ProblemSpec& spec) {
        Clock::time_point start = Clock::now();
        bool answer = synthesis::exists_solution(spec);
        worst_ms = std::max(worst_ms, ms_since(start));
        return answer;
    };

    // Exhaustive two-value sweep: every r against every self-loop-free q.
    int decided = 0;
    for (int r_bits = 0; r_bits < 16; ++r_bits) {
        for (int q_bits = 0; q_bits < 4; ++q_bits) {
            LocalityRelation r{Domain(2)};
            for (int bit = 0; bit < 4; ++bit) {
                if (r_bits & (1 << bit)) {
                    r.add(bit / 2, bit % 2);
                }
            }
            LocalityRelation q{Domain(2)};
            if (q_bits & 1) {
                q.add(0, 1);
            }
            if (q_bits & 2) {
                q.add(1, 0);
            }
            ProblemSpec spec(Domain(2), r, q);
            try {
                validate_spec(spec);
            } catch (const Error&) {
                continue; // start/goal overlap: not a valid input
            }
            ++decided;
            if (timed_exists(spec)) {
                result.fail("claimed a solution for a self-loop-free goal "
                            "(two-value case)");
                return result;
            }
        }
    }
    std::ostringstream sweep;
    sweep << "two-value exhaustive sweep: " << decided
          << " goals without self-loops all decided false";
    result.note(sweep.str());

    // Sampled three-value sweep.
    std::mt19937 rng(55001);
    std::vector<ValuePair> off_diagonal;
    for (Value a = 0; a < 3; ++a) {
        for (Value b = 0; b < 3; ++b) {
            if (a != b) {
                off_diagonal.push_back({a, b});
            }
        }
    }
    int sampled = 0;
    for (int round = 0; round < 200 && sampled < 50; ++round) {
        LocalityRelation r{Domain(3)};
        LocalityRelation q{Domain(3)};
        std::bernoulli_distribution pick(0.4);
        for (Value a = 0; a < 3; ++a) {
            for (Value b = 0; b < 3; ++b) {
                if (pick(rng)) {
                    r.add(a, b);
                }
            }
        }
        for (const auto& [a, b] : off_diagonal) {
            if (pick(rng)) {
                q.add(a, b);
            }
        }
        ProblemSpec spec(Domain(3), r, q);
        try {
            validate_spec(spec);
        } catch (const Error&) {
            continue;
        }
        ++sampled;
        if (timed_exists(spec)) {
            result.fail("claimed a solution for a self-loop-free goal "
                        "(three-value sample)");
            return result;
        }
    }
    result.note("three-value sample: " + std::to_string(sampled) +
                " goals without self-loops all decided false");

    for (const Fixture& f : fixtures()) {
        if (!timed_exists(fixture_spec(f))) {
            result.fail(f.label + ": existence wrongly denied");
            return result;
        }
    }
    result.note("all four case studies decided true");

    std::ostringstream timing;
    timing << "slowest decision " << worst_ms << " ms";
    if (worst_ms >= 1000.0) {
        result.fail(timing.str() + " (limit 1000)");
    } else {
        result.note(timing.str());
    }
    return result;
}

// ===== criterion 6 =========================================================
// End-to-end: 100 random solvable problems; every returned solution must
// hold at every ring size 2..6 under the explicit-state checker, run here
// on the returned artifact (not the synthesizer's internal state). Any
// failure blocks the release.

CriterionResult criterion_end_to_end() {
    CriterionResult result;
    std::mt19937 rng(66001);
    synthesis::SynthesisOptions options;
    int solutions = 0;
    long long attempts = 0;
    const long long max_attempts = 60000;
    while (solutions < 100 && attempts < max_attempts) {
        ++attempts;
        std::optional<ProblemSpec> spec = random_spec(rng);
        if (!spec) {
            continue;
        }
        synthesis::SynthesisOutcome outcome =
            synthesis::syn_leadsto(*spec, options);
        if (!synthesis::succeeded(outcome)) {
            continue;
        }
        ++solutions;
        const Protocol& p = synthesis::solution(outcome);
        for (int n = 2; n <= 6; ++n) {
            verifier::Verdict v = verifier::check_leadsto(p, *spec, n);
            if (!verifier::verdict_holds(v)) {
                std::ostringstream line;
                line << "solution " << solutions << " refuted at ring size "
                     << n << ": " << verifier::verdict_to_json(v, n)
                     << " (spec: " << serialize_spec(*spec) << ")";
                result.fail(line.str());
                return result;
            }
        }
    }
    if (solutions < 100) {
        result.fail("only " + std::to_string(solutions) + " solutions in " +
                    std::to_string(attempts) + " attempts");
        return result;
    }
    std::ostringstream line;
    line << "100 solutions (from " << attempts
         << " random problems) all hold at ring sizes 2..6";
    result.note(line.str());
    return result;
}

// ===== criterion 7 =========================================================
// The bundled three-value stabilizer converges to its goal from arbitrary
// states at every ring size 2..6.

CriterionResult criterion_convergence_regression() {
    CriterionResult result;
    Protocol p = load_protocol_file(kFixtureDir + "/stabilizer.json");
    LocalityRelation goal = eval_relation_expr("(p+s)!=2", Domain(3));
    for (int n = 2; n <= 6; ++n) {
        verifier::Verdict v = verifier::check_convergence(p, goal, n);
        if (!verifier::verdict_holds(v)) {
            std::ostringstream line;
            line << "not self-stabilizing at ring size " << n << ": "
                 << verifier::verdict_to_json(v, n);
            result.fail(line.str());
        }
    }
    if (result.pass) {
        result.note("converges from every state at ring sizes 2..6");
    }
    return result;
}

} // namespace

int main() {
    struct Entry {
        std::string title;
        CriterionResult (*check)();
    };
    const std::vector<Entry> entries = {
        {"pinned synthesis reproduces the bundled reference action sets",
         criterion_golden_fixtures},
        {"reference action sets hold at all admissible ring sizes <= 8",
         criterion_reference_soundness},
        {"predicate states equal the closed-walk expansion",
         criterion_state_equivalence},
        {"random solutions satisfy the structural obligations",
         criterion_solution_shape},
        {"existence decisions are sound and fast", criterion_existence},
        {"random solutions survive independent verification",
         criterion_end_to_end},
        {"the three-value stabilizer converges at desk scale",
         criterion_convergence_regression},
    };

    int failures = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        CriterionResult result;
        try {
            result = entries[i].check();
        } catch (const std::exception& e) {
            result.fail(std::string("unexpected error: ") + e.what());
        }
        if (!result.pass) {
            ++failures;
        }
        std::cout << (result.pass ? "PASS" : "FAIL") << " criterion "
                  << (i + 1) << ": " << entries[i].title << "\n";
        for (const std::string& d : result.details) {
            std::cout << "  - " << d << "\n";
        }
    }
    if (failures > 0) {
        std::cout << failures << " of " << entries.size()
                  << " criteria failed\n";
    } else {
        std::cout << "all " << entries.size() << " criteria passed\n";
    }
    return failures == 0 ? 0 : 1;
}
