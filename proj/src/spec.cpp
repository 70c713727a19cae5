#include "uniring/spec.hpp"

#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "uniring/errors.hpp"
#include "uniring/expr.hpp"
#include "uniring/graphs.hpp"

namespace uniring {

namespace {

using nlohmann::json;

// Shortest closed walk through `start` in the graph, as a closed vertex
// sequence [start, ..., start]. Precondition: start lies on a cycle.
std::vector<Value> closed_walk_through(const graphs::LabeledGraph& g,
                                       Value start) {
    if (g.has_arc(start, start)) {
        return {start, start};
    }
    // Breadth-first from start's successors back to start.
    std::map<Value, Value> came_from;
    std::deque<Value> frontier;
    for (Value succ : g.successors(start)) {
        if (came_from.emplace(succ, start).second) {
            frontier.push_back(succ);
        }
    }
    while (!frontier.empty()) {
        Value v = frontier.front();
        frontier.pop_front();
        if (v == start) {
            break;
        }
        for (Value succ : g.successors(v)) {
            if (came_from.emplace(succ, v).second) {
                frontier.push_back(succ);
            }
        }
    }
    std::vector<Value> path{start};
    for (Value v = came_from.at(start); v != start; v = came_from.at(v)) {
        path.push_back(v);
    }
    path.push_back(start);
    return {path.rbegin(), path.rend()};
}

std::string render_cycle(const std::vector<Value>& cycle) {
    std::ostringstream out;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (i != 0) {
            out << " -> ";
        }
        out << cycle[i];
    }
    return out.str();
}

LocalityRelation parse_pair_list(const json& value, Domain domain,
                                 const std::string& key) {
    if (!value.is_array()) {
        throw SyntaxError("\"" + key + "\" must be an array of [a,b] pairs");
    }
    LocalityRelation rel(domain);
    for (const json& entry : value) {
        if (!entry.is_array() || entry.size() != 2 ||
            !entry[0].is_number_integer() || !entry[1].is_number_integer()) {
            throw SyntaxError("\"" + key +
                              "\" entries must be two-integer arrays");
        }
        rel.add(entry[0].get<Value>(), entry[1].get<Value>());
    }
    return rel;
}

LocalityRelation parse_relation(const json& doc, Domain domain,
                                const std::string& key) {
    const std::string expr_key = key + "_expr";
    bool has_pairs = doc.contains(key);
    bool has_expr = doc.contains(expr_key);
    if (has_pairs == has_expr) {
        throw SyntaxError("exactly one of \"" + key + "\" and \"" + expr_key +
                          "\" is required");
    }
    if (has_pairs) {
        return parse_pair_list(doc.at(key), domain, key);
    }
    const json& expr = doc.at(expr_key);
    if (!expr.is_string()) {
        throw SyntaxError("\"" + expr_key + "\" must be a string");
    }
    return eval_relation_expr(expr.get<std::string>(), domain);
}

} // namespace

ValidationReport validate_spec(const ProblemSpec& spec) {
    graphs::LabeledGraph overlap =
        graphs::locality_graph(spec.r.intersect(spec.q));
    std::set<Value> on_cycle = graphs::cycle_vertices(overlap);
    if (!on_cycle.empty()) {
        std::vector<Value> cycle =
            closed_walk_through(overlap, *on_cycle.begin());
        throw OverlapError(
            "r and q overlap on the cycle " + render_cycle(cycle) +
                ", so the start and goal predicates intersect at some ring "
                "size; the goal would already hold (and must not) at the start",
            std::move(cycle));
    }

    ValidationReport report;
    report.r_has_cycle =
        !graphs::cycle_vertices(graphs::locality_graph(spec.r)).empty();
    report.q_has_cycle =
        !graphs::cycle_vertices(graphs::locality_graph(spec.q)).empty();
    if (!report.r_has_cycle) {
        report.warnings.push_back(
            "the r-graph is acyclic: no ring state of any size satisfies R, "
            "so the property holds vacuously");
    }
    if (!report.q_has_cycle) {
        report.warnings.push_back(
            "the q-graph is acyclic: no ring state of any size satisfies Q, "
            "so the property is unsatisfiable from any genuine R-state");
    }
    return report;
}

ProblemSpec parse_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SyntaxError(std::string("spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw SyntaxError("spec must be a JSON object");
    }
    static const std::set<std::string> known_keys{"domain", "r",      "r_expr",
                                                 "q",      "q_expr", "name"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (known_keys.count(key) == 0) {
            throw SyntaxError("unknown spec key \"" + key + "\"");
        }
    }
    if (!doc.contains("domain") || !doc.at("domain").is_number_integer()) {
        throw SyntaxError("\"domain\" must be an integer");
    }
    int m = doc.at("domain").get<int>();
    if (m < 2) {
        throw DomainError("domain size must be at least 2, got " +
                          std::to_string(m));
    }
    Domain domain(m);
    LocalityRelation r = parse_relation(doc, domain, "r");
    LocalityRelation q = parse_relation(doc, domain, "q");
    std::optional<std::string> name;
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) {
            throw SyntaxError("\"name\" must be a string");
        }
        name = doc.at("name").get<std::string>();
    }
    return ProblemSpec(domain, std::move(r), std::move(q), std::move(name));
}

std::string serialize_spec(const ProblemSpec& spec) {
    json doc;
    doc["domain"] = spec.domain.size;
    if (spec.name) {
        doc["name"] = *spec.name;
    }
    auto pair_list = [](const LocalityRelation& rel) {
        json list = json::array();
        for (const auto& [a, b] : rel.pairs()) {
            list.push_back(json::array({a, b}));
        }
        return list;
    };
    doc["q"] = pair_list(spec.q);
    doc["r"] = pair_list(spec.r);
    return doc.dump();
}

ProblemSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read spec file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_spec(buffer.str());
}

} // namespace uniring
