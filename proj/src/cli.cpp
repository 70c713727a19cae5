#include "uniring/cli.hpp"

#include <charconv>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "uniring/errors.hpp"
#include "uniring/exporters.hpp"
#include "uniring/protocol.hpp"
#include "uniring/spec.hpp"
#include "uniring/synthesis.hpp"
#include "uniring/verifier.hpp"

namespace uniring::cli {

namespace {

int parse_int_strict(const std::string& text, const std::string& what) {
    int value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw SyntaxError(what + " expects an integer, got '" + text + "'");
    }
    return value;
}

// --tree takes "child:parent,child:parent,..." rooted at the pinned sink.
graphs::InTree parse_tree_flag(const std::string& text, Value root) {
    graphs::InTree tree;
    tree.root = root;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw SyntaxError("--tree entries look like child:parent, got '" +
                              item + "'");
        }
        Value child = parse_int_strict(item.substr(0, colon), "--tree child");
        Value parent =
            parse_int_strict(item.substr(colon + 1), "--tree parent");
        tree.parent[child] = parent;
    }
    if (tree.parent.empty()) {
        throw SyntaxError("--tree needs at least one child:parent entry");
    }
    return tree;
}

int run_synth(const std::string& spec_path, std::optional<int> gamma,
              std::optional<std::string> tree_text, int selfcheck_max_n,
              bool explain, std::ostream& out, std::ostream& err) {
    ProblemSpec spec = load_spec_file(spec_path);
    ValidationReport report = validate_spec(spec);
    for (const std::string& w : report.warnings) {
        err << "warning: " << w << "\n";
    }

    synthesis::SynthesisOptions options;
    options.selfcheck_max_n = selfcheck_max_n;
    if (gamma) {
        options.gamma = *gamma;
    }
    if (tree_text) {
        if (!gamma) {
            throw SyntaxError(
                "--tree requires --gamma (the tree is rooted at the pinned "
                "sink)");
        }
        options.tree = parse_tree_flag(*tree_text, *gamma);
    }

    synthesis::SynthesisOutcome outcome = synthesis::syn_leadsto(spec, options);
    if (synthesis::succeeded(outcome)) {
        const Protocol& p = synthesis::solution(outcome);
        out << serialize_protocol(p) << "\n";
        if (explain) {
            err << synthesis::describe_provenance(p);
        }
        return exit_ok;
    }
    err << synthesis::failure(outcome).describe() << "\n";
    return exit_no_solution;
}

int run_verify(const std::string& spec_path, const std::string& proto_path,
               const std::vector<int>& sizes, std::ostream& out,
               std::ostream& err) {
    ProblemSpec spec = load_spec_file(spec_path);
    Protocol p = load_protocol_file(proto_path);
    verifier::WellFormedReport health = verifier::well_formed(p);
    if (!health.ok()) {
        err << "protocol is not well-formed:";
        if (!health.deterministic) {
            err << " duplicate guards;";
        }
        if (!health.self_disabling) {
            err << " an action re-enables another at the same process;";
        }
        err << "\n";
        return exit_error;
    }
    bool all_hold = true;
    for (int n : sizes) {
        verifier::Verdict verdict = verifier::check_leadsto(p, spec, n);
        out << verifier::verdict_to_json(verdict, n) << "\n";
        all_hold = all_hold && verifier::verdict_holds(verdict);
    }
    return all_hold ? exit_ok : exit_refuted;
}

int run_exists(const std::string& spec_path, std::ostream& out) {
    ProblemSpec spec = load_spec_file(spec_path);
    validate_spec(spec);
    bool yes = synthesis::exists_solution(spec);
    out << (yes ? "true" : "false") << "\n";
    return yes ? exit_ok : exit_no_solution;
}

int run_export_dot(const std::string& input_path, const std::string& kind,
                   std::ostream& out) {
    if (kind == "action") {
        Protocol p = load_protocol_file(input_path);
        out << exporters::export_dot(p, exporters::DotKind::Action);
    } else {
        ProblemSpec spec = load_spec_file(input_path);
        out << exporters::export_dot(spec,
                                     kind == "locality-r"
                                         ? exporters::DotKind::LocalityR
                                         : exporters::DotKind::LocalityQ);
    }
    return exit_ok;
}

int run_export_promela(const std::string& spec_path,
                       const std::string& proto_path, int n,
                       std::ostream& out) {
    ProblemSpec spec = load_spec_file(spec_path);
    Protocol p = load_protocol_file(proto_path);
    out << exporters::export_promela(p, spec, n);
    return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"synthesis and verification of symmetric unidirectional "
                 "ring protocols"};
    app.name("uniring");
    app.require_subcommand(1);

    std::string spec_path;
    std::string proto_path;
    std::string input_path;
    std::optional<int> gamma;
    std::optional<std::string> tree_text;
    int selfcheck_max_n = 6;
    bool explain = false;
    std::vector<int> sizes;
    std::string kind;
    int promela_n = 0;

    CLI::App* synth =
        app.add_subcommand("synth", "synthesize a protocol from a problem "
                                    "description");
    synth->add_option("spec", spec_path, "problem description JSON file")
        ->required();
    synth->add_option("--gamma", gamma,
                      "pin the sink value instead of searching");
    synth->add_option("--tree", tree_text,
                      "pin the core spanning tree as child:parent,... "
                      "(requires --gamma)");
    synth->add_option("--selfcheck-n", selfcheck_max_n,
                      "re-verify candidates at ring sizes 2..K (0 disables)")
        ->check(CLI::NonNegativeNumber);
    synth->add_flag("--explain", explain,
                    "print the construction trace to stderr");

    CLI::App* verify =
        app.add_subcommand("verify", "check the reach-and-stay property at "
                                     "fixed ring sizes");
    verify->add_option("spec", spec_path, "problem description JSON file")
        ->required();
    verify->add_option("protocol", proto_path, "protocol JSON file")
        ->required();
    verify->add_option("--n", sizes, "comma-separated ring sizes")
        ->required()
        ->delimiter(',');

    CLI::App* exists =
        app.add_subcommand("exists", "decide whether any protocol solves the "
                                     "problem");
    exists->add_option("spec", spec_path, "problem description JSON file")
        ->required();

    CLI::App* export_dot =
        app.add_subcommand("export-dot", "render a locality or action graph "
                                         "as DOT");
    export_dot->add_option("input", input_path, "spec JSON (locality kinds) "
                                                "or protocol JSON (action)")
        ->required();
    export_dot
        ->add_option("--kind", kind, "locality-r, locality-q, or action")
        ->required()
        ->check(CLI::IsMember({"locality-r", "locality-q", "action"}));

    CLI::App* export_promela = app.add_subcommand(
        "export-promela", "emit a SPIN model for a fixed ring size");
    export_promela->add_option("spec", spec_path, "problem description JSON "
                                                  "file")
        ->required();
    export_promela->add_option("protocol", proto_path, "protocol JSON file")
        ->required();
    export_promela->add_option("--n", promela_n, "ring size (>= 2)")
        ->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_error;
    }

    try {
        if (synth->parsed()) {
            return run_synth(spec_path, gamma, tree_text, selfcheck_max_n,
                             explain, out, err);
        }
        if (verify->parsed()) {
            return run_verify(spec_path, proto_path, sizes, out, err);
        }
        if (exists->parsed()) {
            return run_exists(spec_path, out);
        }
        if (export_dot->parsed()) {
            return run_export_dot(input_path, kind, out);
        }
        if (export_promela->parsed()) {
            return run_export_promela(spec_path, proto_path, promela_n, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}

} // namespace uniring::cli
