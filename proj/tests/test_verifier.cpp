#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "uniring/errors.hpp"
#include "uniring/expr.hpp"
#include "uniring/graphs.hpp"
#include "uniring/protocol.hpp"
#include "uniring/relation.hpp"
#include "uniring/spec.hpp"
#include "uniring/synthesis.hpp"
#include "uniring/verifier.hpp"

using namespace uniring;
using namespace uniring::verifier;

namespace {

const std::string kFixtureDir = UNIRING_FIXTURE_DIR;

ProblemSpec fixture_spec(const std::string& name) {
    return load_spec_file(kFixtureDir + "/" + name);
}

Protocol fixture_protocol(const std::string& name) {
    return load_protocol_file(kFixtureDir + "/" + name);
}

Protocol stabilizer() {
    return Protocol(Domain(3),
                    {Action{0, 2, 1}, Action{1, 1, 2}, Action{2, 0, 1}});
}

// The two-action copy-left protocol: every boundary between unequal
// neighbours travels right forever on rings that stay non-uniform.
Protocol copy_left() {
    return Protocol(Domain(2), {Action{0, 1, 0}, Action{1, 0, 1}});
}

RingState rotated(const RingState& s, int k) {
    const int n = static_cast<int>(s.size());
    RingState out(s.size());
    for (int i = 0; i < n; ++i) {
        out[(i + k) % n] = s[i];
    }
    return out;
}

// A path replays iff every consecutive pair is an actual transition.
void require_replays(const Protocol& p, const std::vector<RingState>& path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        std::vector<RingState> succ = successors(p, path[i]);
        INFO("step " << i);
        REQUIRE(std::find(succ.begin(), succ.end(), path[i + 1]) !=
                succ.end());
    }
}

} // namespace

// ===== Local building blocks ===============================================

TEST_CASE("a state satisfies a relation iff every locality does",
          "[verifier][basics]") {
    LocalityRelation r(Domain(4), {{0, 2}, {2, 0}});
    CHECK(holds_on(r, {0, 2, 0, 2}));
    CHECK(holds_on(r, {2, 0, 2, 0}));
    CHECK_FALSE(holds_on(r, {0, 2, 2, 0}));
    CHECK_FALSE(holds_on(r, {0, 2, 0, 0}));
    CHECK(holds_on(full_relation(Domain(2)), {0, 1}));
}

TEST_CASE("successors fire one enabled process at a time, ascending",
          "[verifier][basics]") {
    Protocol p = stabilizer();
    // (2,0,1): process 0 reads (1,2)? no. process 1 reads (2,0) -> write 1.
    // process 2 reads (0,1)? no.
    CHECK(successors(p, {2, 0, 1}) ==
          std::vector<RingState>{{2, 1, 1}});
    // (1,1,1): every process reads (1,1) and may write 2.
    CHECK(successors(p, {1, 1, 1}) ==
          std::vector<RingState>{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
    // (0,0,0): nothing is enabled.
    CHECK(successors(p, {0, 0, 0}).empty());
}

TEST_CASE("predicate states enumerate the conjunctive predicate",
          "[verifier][states]") {
    LocalityRelation r(Domain(4), {{0, 2}, {2, 0}});
    // Ascending in the base-4 code with index 0 least significant:
    // (2,0,2,0) encodes as 34, (0,2,0,2) as 136.
    CHECK(predicate_states(r, 4) ==
          std::vector<RingState>{{2, 0, 2, 0}, {0, 2, 0, 2}});
    CHECK(predicate_states(r, 3).empty());
    CHECK(predicate_states(full_relation(Domain(2)), 2) ==
          std::vector<RingState>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});

    VerifierOptions tight;
    tight.max_states = 8;
    CHECK_THROWS_AS(predicate_states(full_relation(Domain(2)), 4, tight),
                    BudgetExceeded);
}

TEST_CASE("predicate states agree with the closed-walk expansion",
          "[verifier][states][oracle]") {
    std::mt19937 rng(5150);
    for (int round = 0; round < 40; ++round) {
        int m = std::uniform_int_distribution<int>(2, 3)(rng);
        int n = std::uniform_int_distribution<int>(2, 5)(rng);
        LocalityRelation rel{Domain(m)};
        for (Value a = 0; a < m; ++a) {
            for (Value b = 0; b < m; ++b) {
                if (std::bernoulli_distribution(0.4)(rng)) {
                    rel.add(a, b);
                }
            }
        }
        std::set<RingState> expanded;
        graphs::LabeledGraph g = graphs::locality_graph(rel);
        for (int len = 1; len <= n; ++len) {
            if (n % len != 0) {
                continue;
            }
            for (const graphs::ClosedWalk& walk : graphs::closed_walks(g, len)) {
                for (const std::vector<Value>& s :
                     graphs::walk_states(walk, n)) {
                    expanded.insert(s);
                }
            }
        }
        std::vector<RingState> direct = predicate_states(rel, n);
        std::set<RingState> direct_set(direct.begin(), direct.end());
        INFO("round " << round << " m=" << m << " n=" << n);
        REQUIRE(direct_set == expanded);
    }
}

// ===== Well-formedness =====================================================

TEST_CASE("well-formedness accepts the stabilizer and reports conflicts",
          "[verifier][wellformed]") {
    CHECK(well_formed(stabilizer()).ok());
    CHECK(well_formed(Protocol{Domain(2)}).ok());

    WellFormedReport dup =
        well_formed(Protocol(Domain(4), {Action{0, 1, 2}, Action{0, 1, 3}}));
    CHECK_FALSE(dup.deterministic);
    CHECK(dup.self_disabling);
    REQUIRE(dup.conflicts.size() == 1);
    CHECK(dup.conflicts[0] ==
          std::pair<Action, Action>{{0, 1, 2}, {0, 1, 3}});

    WellFormedReport chain =
        well_formed(Protocol(Domain(4), {Action{0, 1, 2}, Action{0, 2, 3}}));
    CHECK(chain.deterministic);
    CHECK_FALSE(chain.self_disabling);
    REQUIRE(chain.conflicts.size() == 1);
    CHECK(chain.conflicts[0] ==
          std::pair<Action, Action>{{0, 1, 2}, {0, 2, 3}});

    // Writing the guard's own value re-enables the action itself.
    WellFormedReport self =
        well_formed(Protocol(Domain(2), {Action{0, 1, 1}}));
    CHECK_FALSE(self.self_disabling);
}

// ===== Reach-the-goal checking =============================================

TEST_CASE("the published modular-sum actions hold on even rings",
          "[verifier][leadsto]") {
    ProblemSpec spec = fixture_spec("sumnot2.json");
    Protocol p = fixture_protocol("sumnot2-published.json");
    for (int n : {2, 4, 6}) {
        INFO("ring size " << n);
        CHECK(verdict_holds(check_leadsto(p, spec, n)));
    }
    // Odd sizes have an empty start set and hold vacuously.
    CHECK(verdict_holds(check_leadsto(p, spec, 3)));
}

TEST_CASE("an empty protocol deadlocks at the smallest start state",
          "[verifier][leadsto]") {
    ProblemSpec spec = fixture_spec("sumnot2.json");
    Protocol p{Domain(4)};
    Verdict v = check_leadsto(p, spec, 2);
    REQUIRE(std::holds_alternative<DeadlockCounterexample>(v));
    const auto& cex = std::get<DeadlockCounterexample>(v);
    // (2,0) encodes below (0,2); it is itself deadlocked and outside Q.
    CHECK(cex.path == std::vector<RingState>{{2, 0}});
    CHECK(verdict_to_json(v, 2) ==
          R"({"n":2,"path":[[2,0]],"verdict":"deadlock"})");
}

TEST_CASE("the all-ones state deadlocks the published odd-values actions",
          "[verifier][leadsto]") {
    ProblemSpec spec = fixture_spec("parity.json");
    Protocol p = fixture_protocol("parity-published.json");
    for (int n : {2, 3, 4}) {
        Verdict v = check_leadsto(p, spec, n);
        REQUIRE(std::holds_alternative<DeadlockCounterexample>(v));
        const auto& cex = std::get<DeadlockCounterexample>(v);
        REQUIRE(cex.path.size() == 1);
        CHECK(cex.path[0] == RingState(n, 1));
        CHECK(successors(p, cex.path[0]).empty());
        CHECK_FALSE(holds_on(spec.q, cex.path[0]));
    }
}

TEST_CASE("a goal-avoiding cycle is reported with stem and loop",
          "[verifier][leadsto]") {
    // Uniform states are the goal; everything non-uniform keeps a moving
    // boundary and never quiesces.
    ProblemSpec spec(Domain(2), full_relation(Domain(2)),
                     LocalityRelation(Domain(2), {{0, 0}, {1, 1}}));
    Verdict v = check_leadsto(copy_left(), spec, 3);
    REQUIRE(std::holds_alternative<LivelockCounterexample>(v));
    const auto& cex = std::get<LivelockCounterexample>(v);
    CHECK(cex.stem == std::vector<RingState>{{1, 0, 0}});
    CHECK(cex.loop == std::vector<RingState>{{1, 0, 0},
                                             {1, 1, 0},
                                             {0, 1, 0},
                                             {0, 1, 1},
                                             {0, 0, 1},
                                             {1, 0, 1}});
    CHECK(verdict_to_json(v, 3) ==
          R"({"loop":[[1,0,0],[1,1,0],[0,1,0],[0,1,1],[0,0,1],[1,0,1]],)"
          R"("n":3,"stem":[[1,0,0]],"verdict":"livelock"})");
}

TEST_CASE("counterexamples replay under the successor function",
          "[verifier][invariants]") {
    // Deadlock witness: path replays and ends stuck outside the goal.
    ProblemSpec parity = fixture_spec("parity.json");
    Protocol published = fixture_protocol("parity-published.json");
    Verdict v = check_leadsto(published, parity, 4);
    REQUIRE(std::holds_alternative<DeadlockCounterexample>(v));
    const auto& dead = std::get<DeadlockCounterexample>(v);
    REQUIRE_FALSE(dead.path.empty());
    CHECK(holds_on(parity.r, dead.path.front()));
    require_replays(published, dead.path);
    CHECK(successors(published, dead.path.back()).empty());
    CHECK_FALSE(holds_on(parity.q, dead.path.back()));

    // Livelock witness: stem replays into the loop, the loop closes, and
    // every loop state avoids the goal.
    ProblemSpec spec(Domain(2), full_relation(Domain(2)),
                     LocalityRelation(Domain(2), {{0, 0}, {1, 1}}));
    Verdict lv = check_leadsto(copy_left(), spec, 4);
    REQUIRE(std::holds_alternative<LivelockCounterexample>(lv));
    const auto& live = std::get<LivelockCounterexample>(lv);
    REQUIRE_FALSE(live.loop.empty());
    CHECK(holds_on(spec.r, live.stem.front()));
    CHECK(live.stem.back() == live.loop.front());
    require_replays(copy_left(), live.stem);
    std::vector<RingState> closed = live.loop;
    closed.push_back(live.loop.front());
    require_replays(copy_left(), closed);
    for (const RingState& s : live.loop) {
        CHECK_FALSE(holds_on(spec.q, s));
    }
}

TEST_CASE("rotating a counterexample yields another counterexample",
          "[verifier][invariants]") {
    ProblemSpec parity = fixture_spec("parity.json");
    Protocol published = fixture_protocol("parity-published.json");
    Verdict v = check_leadsto(published, parity, 4);
    REQUIRE(std::holds_alternative<DeadlockCounterexample>(v));
    std::vector<RingState> path = std::get<DeadlockCounterexample>(v).path;
    for (int k = 1; k < 4; ++k) {
        std::vector<RingState> turned;
        for (const RingState& s : path) {
            turned.push_back(rotated(s, k));
        }
        CHECK(holds_on(parity.r, turned.front()));
        require_replays(published, turned);
        CHECK(successors(published, turned.back()).empty());
        CHECK_FALSE(holds_on(parity.q, turned.back()));
    }
}

TEST_CASE("growing the goal relation preserves a holding verdict",
          "[verifier][invariants]") {
    ProblemSpec spec = fixture_spec("sumnot2.json");
    Protocol p = fixture_protocol("sumnot2-published.json");
    REQUIRE(verdict_holds(check_leadsto(p, spec, 4)));

    std::vector<ValuePair> extras{{0, 0}, {1, 1}, {3, 3}};
    LocalityRelation grown = spec.q;
    for (const auto& [a, b] : extras) {
        grown.add(a, b);
        ProblemSpec larger(spec.domain, spec.r, grown);
        INFO("added (" << a << "," << b << ")");
        CHECK(verdict_holds(check_leadsto(p, larger, 4)));
    }
}

// ===== Guardrails ==========================================================

TEST_CASE("small rings, foreign domains, and big state spaces are rejected",
          "[verifier][errors]") {
    ProblemSpec spec = fixture_spec("sumnot2.json");
    Protocol p = fixture_protocol("sumnot2-published.json");
    CHECK_THROWS_AS(check_leadsto(p, spec, 1), DomainError);
    CHECK_THROWS_AS(check_leadsto(p, spec, 0), DomainError);
    CHECK_THROWS_AS(check_leadsto(stabilizer(), spec, 2), DomainError);

    VerifierOptions tight;
    tight.max_states = 100;
    CHECK_THROWS_AS(check_leadsto(p, spec, 4, tight), BudgetExceeded);
}

// ===== Convergence and closure =============================================

TEST_CASE("the three-value stabilizer converges from every state",
          "[verifier][convergence]") {
    Protocol p = stabilizer();
    LocalityRelation goal =
        eval_relation_expr("(p+s)!=2", Domain(3));
    for (int n : {2, 3, 4, 5, 6}) {
        INFO("ring size " << n);
        CHECK(verdict_holds(check_convergence(p, goal, n)));
    }
}

TEST_CASE("an empty protocol does not converge to a strict goal",
          "[verifier][convergence]") {
    Protocol p{Domain(2)};
    LocalityRelation goal(Domain(2), {{1, 1}});
    Verdict v = check_convergence(p, goal, 2);
    REQUIRE(std::holds_alternative<DeadlockCounterexample>(v));
    CHECK(std::get<DeadlockCounterexample>(v).path ==
          std::vector<RingState>{{0, 0}});
}

TEST_CASE("the synthesized modular-sum protocol promises nothing outside "
          "its start set",
          "[verifier][convergence]") {
    ProblemSpec spec = fixture_spec("sumnot2.json");
    synthesis::SynthesisOutcome outcome = synthesis::syn_leadsto(spec);
    REQUIRE(synthesis::succeeded(outcome));
    const Protocol& p = synthesis::solution(outcome);

    // Within R everything is guaranteed...
    CHECK(verdict_holds(check_leadsto(p, spec, 4)));

    // ...but from arbitrary states the guarantee is gone: the all-zero
    // state enables nothing and sits outside the goal.
    Verdict v = check_convergence(p, spec.q, 4);
    CHECK_FALSE(verdict_holds(v));
    CHECK(verdict_to_json(v, 4) ==
          R"({"n":4,"path":[[0,0,0,0]],"verdict":"deadlock"})");
}

TEST_CASE("closure scans find the first escaping transition",
          "[verifier][closure]") {
    CHECK(check_closure(stabilizer(), full_relation(Domain(3)), 3).closed);

    LocalityRelation goal = eval_relation_expr("(p+s)!=2", Domain(3));
    CHECK(check_closure(stabilizer(), goal, 3).closed);

    Protocol leaky(Domain(2), {Action{1, 1, 0}});
    ClosureResult res =
        check_closure(leaky, LocalityRelation(Domain(2), {{1, 1}}), 2);
    REQUIRE_FALSE(res.closed);
    REQUIRE(res.violation.size() == 2);
    CHECK(res.violation[0] == RingState{1, 1});
    CHECK(res.violation[1] == RingState{0, 1});
    CHECK(holds_on(LocalityRelation(Domain(2), {{1, 1}}), res.violation[0]));
    CHECK_FALSE(
        holds_on(LocalityRelation(Domain(2), {{1, 1}}), res.violation[1]));
}

TEST_CASE("verdicts serialize to single-line JSON", "[verifier][json]") {
    CHECK(verdict_to_json(Holds{}, 5) == R"({"n":5,"verdict":"holds"})");
}
