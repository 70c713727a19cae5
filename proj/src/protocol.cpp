#include "uniring/protocol.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "uniring/errors.hpp"

namespace uniring {

std::optional<Value> Protocol::delta(Value a, Value b) const {
    // Actions are ordered by (a, b, c); the first match is the only one in a
    // deterministic protocol and the canonical one otherwise.
    auto it = actions.lower_bound(Action{a, b, 0});
    if (it != actions.end() && it->a == a && it->b == b) {
        return it->c;
    }
    return std::nullopt;
}

graphs::LabeledGraph Protocol::action_graph() const {
    graphs::LabeledGraph g(domain);
    for (const Action& act : actions) {
        g.add_arc(act.a, act.c, act.b);
    }
    return g;
}

Protocol parse_protocol(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SyntaxError(std::string("protocol is not valid JSON: ") +
                          e.what());
    }
    if (!doc.is_object()) {
        throw SyntaxError("protocol must be a JSON object");
    }
    static const std::set<std::string> known_keys{"domain", "gamma", "actions"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (known_keys.count(key) == 0) {
            throw SyntaxError("unknown protocol key \"" + key + "\"");
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
    Protocol p{Domain(m)};
    if (!doc.contains("actions") || !doc.at("actions").is_array()) {
        throw SyntaxError("\"actions\" must be an array of [a,b,c] triples");
    }
    for (const json& entry : doc.at("actions")) {
        if (!entry.is_array() || entry.size() != 3 ||
            !entry[0].is_number_integer() || !entry[1].is_number_integer() ||
            !entry[2].is_number_integer()) {
            throw SyntaxError("\"actions\" entries must be three-integer arrays");
        }
        Action act{entry[0].get<Value>(), entry[1].get<Value>(),
                   entry[2].get<Value>()};
        if (!p.domain.contains(act.a) || !p.domain.contains(act.b) ||
            !p.domain.contains(act.c)) {
            throw DomainError("action value outside domain of size " +
                              std::to_string(m));
        }
        p.actions.insert(act);
    }
    if (doc.contains("gamma")) {
        if (!doc.at("gamma").is_number_integer()) {
            throw SyntaxError("\"gamma\" must be an integer");
        }
        Value g = doc.at("gamma").get<Value>();
        if (!p.domain.contains(g)) {
            throw DomainError("\"gamma\" outside domain of size " +
                              std::to_string(m));
        }
        p.sink = g;
    }
    return p;
}

std::string serialize_protocol(const Protocol& p) {
    using nlohmann::json;
    json doc;
    json list = json::array();
    for (const Action& act : p.actions) {
        list.push_back(json::array({act.a, act.b, act.c}));
    }
    doc["actions"] = list;
    doc["domain"] = p.domain.size;
    if (p.sink) {
        doc["gamma"] = *p.sink;
    }
    return doc.dump();
}

Protocol load_protocol_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read protocol file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_protocol(buffer.str());
}

} // namespace uniring
