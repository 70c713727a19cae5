#include "uniring/exporters.hpp"

#include <sstream>

#include "uniring/errors.hpp"

namespace uniring::exporters {

namespace {

std::string dot_prologue(const std::string& name, int m) {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    out << "  rankdir=LR;\n";
    for (Value v = 0; v < m; ++v) {
        out << "  " << v << ";\n";
    }
    return out.str();
}

std::string relation_dot(const std::string& name,
                         const LocalityRelation& rel) {
    std::ostringstream out;
    out << dot_prologue(name, rel.domain().size);
    for (const auto& [a, b] : rel.pairs()) {
        out << "  " << a << " -> " << b << ";\n";
    }
    out << "}\n";
    return out.str();
}

// Disjunction over the pairs of `rel` for the locality (x[prev], x[self]);
// an empty relation renders as `false`.
std::string locality_condition(const LocalityRelation& rel, int prev,
                               int self) {
    if (rel.empty()) {
        return "false";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [a, b] : rel.pairs()) {
        if (!first) {
            out << " || ";
        }
        first = false;
        out << "(x[" << prev << "] == " << a << " && x[" << self
            << "] == " << b << ")";
    }
    return out.str();
}

// Conjunction over all ring localities; index 0's predecessor is n-1.
std::string ring_condition(const LocalityRelation& rel, int n) {
    std::ostringstream out;
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            out << " && ";
        }
        out << "(" << locality_condition(rel, (i + n - 1) % n, i) << ")";
    }
    return out.str();
}

} // namespace

std::string export_dot(const ProblemSpec& spec, DotKind kind) {
    switch (kind) {
    case DotKind::LocalityR:
        return relation_dot("locality_r", spec.r);
    case DotKind::LocalityQ:
        return relation_dot("locality_q", spec.q);
    case DotKind::Action:
        throw DomainError("the action graph is exported from a protocol, "
                          "not from a problem description");
    }
    throw DomainError("unknown dot kind");
}

std::string export_dot(const Protocol& p, DotKind kind) {
    if (kind != DotKind::Action) {
        throw DomainError("locality graphs are exported from a problem "
                          "description, not from a protocol");
    }
    std::ostringstream out;
    out << dot_prologue("action", p.domain.size);
    for (const Action& act : p.actions) {
        out << "  " << act.a << " -> " << act.c << " [label=\"" << act.b
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_promela(const Protocol& p, const ProblemSpec& spec,
                           int n) {
    if (p.domain != spec.domain) {
        throw DomainError("protocol and problem description use different "
                          "domains");
    }
    if (n < 2) {
        throw DomainError("a ring needs at least two processes");
    }
    const int m = p.domain.size;
    std::ostringstream out;
    out << "/* symmetric unidirectional ring: " << n << " processes, values "
        << "0.." << (m - 1) << " */\n";
    out << "#define N " << n << "\n\n";
    out << "byte x[N];\n\n";
    out << "proctype P(byte i) {\n";
    out << "    byte p = (i + N - 1) % N;\n";
    out << "end:\n";
    out << "    do\n";
    if (p.actions.empty()) {
        out << "    :: false -> skip\n";
    } else {
        for (const Action& act : p.actions) {
            out << "    :: atomic { x[p] == " << act.a << " && x[i] == "
                << act.b << " -> x[i] = " << act.c << " }\n";
        }
    }
    out << "    od\n";
    out << "}\n\n";
    out << "init {\n";
    out << "    byte k;\n";
    out << "    k = 0;\n";
    out << "    do\n";
    out << "    :: k < N ->\n";
    out << "        if\n";
    for (Value v = 0; v < m; ++v) {
        out << "        :: x[k] = " << v << "\n";
    }
    out << "        fi;\n";
    out << "        k = k + 1\n";
    out << "    :: else -> break\n";
    out << "    od;\n";
    out << "    k = 0;\n";
    out << "    do\n";
    out << "    :: k < N -> run P(k); k = k + 1\n";
    out << "    :: else -> break\n";
    out << "    od\n";
    out << "}\n\n";
    out << "ltl convergence { [] ((" << ring_condition(spec.r, n)
        << ") -> <> (" << ring_condition(spec.q, n) << ")) }\n";
    return out.str();
}

} // namespace uniring::exporters
