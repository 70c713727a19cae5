#include "uniring/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uniring/errors.hpp"

namespace uniring {

// ===== AST =================================================================

struct RelationExpr::Node {
    enum class Kind {
        Literal, // integer constant
        VarP,    // predecessor value
        VarS,    // own value
        Neg,     // unary minus
        Add,
        Sub,
        Mul,
        Mod, // nonnegative remainder
        Cmp, // one of ==, !=, <, <=, >, >=
        Not,
        And,
        Or,
    };
    enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

    Kind kind = Kind::Literal;
    long long literal = 0;
    CmpOp cmp = CmpOp::Eq;
    std::unique_ptr<Node> lhs;
    std::unique_ptr<Node> rhs;

    bool is_bool() const {
        switch (kind) {
        case Kind::Cmp:
        case Kind::Not:
        case Kind::And:
        case Kind::Or:
            return true;
        default:
            return false;
        }
    }

    long long eval_int(Value p, Value s) const;
    bool eval_bool(Value p, Value s) const;

    struct Parser;
};

long long RelationExpr::Node::eval_int(Value p, Value s) const {
    switch (kind) {
    case Kind::Literal:
        return literal;
    case Kind::VarP:
        return p;
    case Kind::VarS:
        return s;
    case Kind::Neg:
        return -lhs->eval_int(p, s);
    case Kind::Add:
        return lhs->eval_int(p, s) + rhs->eval_int(p, s);
    case Kind::Sub:
        return lhs->eval_int(p, s) - rhs->eval_int(p, s);
    case Kind::Mul:
        return lhs->eval_int(p, s) * rhs->eval_int(p, s);
    case Kind::Mod: {
        long long divisor = rhs->eval_int(p, s);
        if (divisor == 0) {
            throw ExprError("modulo by zero");
        }
        long long m = divisor < 0 ? -divisor : divisor;
        return ((lhs->eval_int(p, s) % m) + m) % m;
    }
    default:
        throw ExprError("internal: boolean node evaluated as integer");
    }
}

bool RelationExpr::Node::eval_bool(Value p, Value s) const {
    switch (kind) {
    case Kind::Cmp: {
        long long l = lhs->eval_int(p, s);
        long long r = rhs->eval_int(p, s);
        switch (cmp) {
        case CmpOp::Eq:
            return l == r;
        case CmpOp::Ne:
            return l != r;
        case CmpOp::Lt:
            return l < r;
        case CmpOp::Le:
            return l <= r;
        case CmpOp::Gt:
            return l > r;
        case CmpOp::Ge:
            return l >= r;
        }
        return false; // unreachable
    }
    case Kind::Not:
        return !lhs->eval_bool(p, s);
    case Kind::And: // short-circuit, so "s!=0 && p%s==0" is safe
        return lhs->eval_bool(p, s) && rhs->eval_bool(p, s);
    case Kind::Or:
        return lhs->eval_bool(p, s) || rhs->eval_bool(p, s);
    default:
        throw ExprError("internal: integer node evaluated as boolean");
    }
}

// ===== Lexer + recursive-descent parser ====================================

struct RelationExpr::Node::Parser {
    struct Token {
        enum class Kind { End, Int, Ident, Op, LParen, RParen };
        Kind kind = Kind::End;
        std::string text;
        std::size_t pos = 0;
    };

    std::vector<Token> tokens;
    std::size_t index = 0;
    std::string_view source;

    explicit Parser(std::string_view text) : source(text) { lex(); }

    [[noreturn]] void fail(const std::string& what, std::size_t pos) const {
        throw ExprError(what + " at position " + std::to_string(pos) + " in \"" +
                        std::string(source) + "\"");
    }

    void lex() {
        std::size_t i = 0;
        while (i < source.size()) {
            char c = source[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = i;
                while (i < source.size() &&
                       std::isdigit(static_cast<unsigned char>(source[i]))) {
                    ++i;
                }
                tokens.push_back({Token::Kind::Int,
                                  std::string(source.substr(start, i - start)),
                                  start});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = i;
                while (i < source.size() &&
                       (std::isalnum(static_cast<unsigned char>(source[i])) ||
                        source[i] == '_')) {
                    ++i;
                }
                tokens.push_back({Token::Kind::Ident,
                                  std::string(source.substr(start, i - start)),
                                  start});
                continue;
            }
            if (c == '(') {
                tokens.push_back({Token::Kind::LParen, "(", i});
                ++i;
                continue;
            }
            if (c == ')') {
                tokens.push_back({Token::Kind::RParen, ")", i});
                ++i;
                continue;
            }
            // Two-character operators first.
            if (i + 1 < source.size()) {
                std::string two = std::string(source.substr(i, 2));
                if (two == "==" || two == "!=" || two == "<=" || two == ">=" ||
                    two == "&&" || two == "||") {
                    tokens.push_back({Token::Kind::Op, two, i});
                    i += 2;
                    continue;
                }
            }
            if (c == '<' || c == '>' || c == '!' || c == '+' || c == '-' ||
                c == '*' || c == '%') {
                tokens.push_back({Token::Kind::Op, std::string(1, c), i});
                ++i;
                continue;
            }
            fail(std::string("unexpected character '") + c + "'", i);
        }
        tokens.push_back({Token::Kind::End, "", source.size()});
    }

    const Token& peek() const { return tokens[index]; }

    bool accept_op(std::string_view op) {
        if (peek().kind == Token::Kind::Op && peek().text == op) {
            ++index;
            return true;
        }
        return false;
    }

    using NodePtr = std::unique_ptr<Node>;

    static NodePtr make(Node::Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    void require_int(const NodePtr& n, std::string_view op,
                     std::size_t pos) const {
        if (n->is_bool()) {
            fail("operator '" + std::string(op) +
                     "' needs integer operands, got a boolean",
                 pos);
        }
    }

    void require_bool(const NodePtr& n, std::string_view op,
                      std::size_t pos) const {
        if (!n->is_bool()) {
            fail("operator '" + std::string(op) +
                     "' needs boolean operands, got an integer",
                 pos);
        }
    }

    NodePtr parse_or() {
        NodePtr n = parse_and();
        while (true) {
            std::size_t pos = peek().pos;
            if (!accept_op("||")) {
                break;
            }
            require_bool(n, "||", pos);
            NodePtr r = parse_and();
            require_bool(r, "||", pos);
            n = make(Node::Kind::Or, std::move(n), std::move(r));
        }
        return n;
    }

    NodePtr parse_and() {
        NodePtr n = parse_unary();
        while (true) {
            std::size_t pos = peek().pos;
            if (!accept_op("&&")) {
                break;
            }
            require_bool(n, "&&", pos);
            NodePtr r = parse_unary();
            require_bool(r, "&&", pos);
            n = make(Node::Kind::And, std::move(n), std::move(r));
        }
        return n;
    }

    NodePtr parse_unary() {
        std::size_t pos = peek().pos;
        if (accept_op("!")) {
            NodePtr n = parse_unary();
            require_bool(n, "!", pos);
            return make(Node::Kind::Not, std::move(n));
        }
        return parse_cmp();
    }

    NodePtr parse_cmp() {
        NodePtr l = parse_sum();
        const Token& t = peek();
        if (t.kind != Token::Kind::Op) {
            return l;
        }
        Node::CmpOp op;
        if (t.text == "==") {
            op = Node::CmpOp::Eq;
        } else if (t.text == "!=") {
            op = Node::CmpOp::Ne;
        } else if (t.text == "<") {
            op = Node::CmpOp::Lt;
        } else if (t.text == "<=") {
            op = Node::CmpOp::Le;
        } else if (t.text == ">") {
            op = Node::CmpOp::Gt;
        } else if (t.text == ">=") {
            op = Node::CmpOp::Ge;
        } else {
            return l;
        }
        std::size_t pos = t.pos;
        std::string text = t.text;
        ++index;
        require_int(l, text, pos);
        NodePtr r = parse_sum();
        require_int(r, text, pos);
        NodePtr n = make(Node::Kind::Cmp, std::move(l), std::move(r));
        n->cmp = op;
        return n; // non-associative: "a < b < c" is a syntax error downstream
    }

    NodePtr parse_sum() {
        NodePtr n = parse_term();
        while (true) {
            std::size_t pos = peek().pos;
            bool add = false;
            if (accept_op("+")) {
                add = true;
            } else if (!accept_op("-")) {
                break;
            }
            require_int(n, add ? "+" : "-", pos);
            NodePtr r = parse_term();
            require_int(r, add ? "+" : "-", pos);
            n = make(add ? Node::Kind::Add : Node::Kind::Sub, std::move(n),
                     std::move(r));
        }
        return n;
    }

    NodePtr parse_term() {
        NodePtr n = parse_factor();
        while (true) {
            std::size_t pos = peek().pos;
            bool mul = false;
            if (accept_op("*")) {
                mul = true;
            } else if (!accept_op("%")) {
                break;
            }
            require_int(n, mul ? "*" : "%", pos);
            NodePtr r = parse_factor();
            require_int(r, mul ? "*" : "%", pos);
            n = make(mul ? Node::Kind::Mul : Node::Kind::Mod, std::move(n),
                     std::move(r));
        }
        return n;
    }

    NodePtr parse_factor() {
        const Token& t = peek();
        switch (t.kind) {
        case Token::Kind::Op:
            if (t.text == "-") {
                std::size_t pos = t.pos;
                ++index;
                NodePtr n = parse_factor();
                require_int(n, "-", pos);
                return make(Node::Kind::Neg, std::move(n));
            }
            fail("unexpected operator '" + t.text + "'", t.pos);
        case Token::Kind::Int: {
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::Literal;
            try {
                n->literal = std::stoll(t.text);
            } catch (const std::exception&) {
                fail("integer literal out of range", t.pos);
            }
            ++index;
            return n;
        }
        case Token::Kind::Ident: {
            Node::Kind k;
            if (t.text == "p") {
                k = Node::Kind::VarP;
            } else if (t.text == "s") {
                k = Node::Kind::VarS;
            } else {
                fail("unknown identifier '" + t.text +
                         "' (the variables are 'p' and 's')",
                     t.pos);
            }
            ++index;
            return make(k);
        }
        case Token::Kind::LParen: {
            ++index;
            NodePtr n = parse_or();
            if (peek().kind != Token::Kind::RParen) {
                fail("expected ')'", peek().pos);
            }
            ++index;
            return n;
        }
        case Token::Kind::RParen:
            fail("unexpected ')'", t.pos);
        case Token::Kind::End:
            fail("unexpected end of expression", t.pos);
        }
        fail("unexpected token", t.pos); // unreachable
    }

    NodePtr parse_top() {
        NodePtr n = parse_or();
        if (peek().kind != Token::Kind::End) {
            fail("trailing input '" + peek().text + "'", peek().pos);
        }
        if (!n->is_bool()) {
            fail("expression must be boolean at the top level", 0);
        }
        return n;
    }
};

// ===== Public surface ======================================================

RelationExpr RelationExpr::parse(std::string_view text) {
    Node::Parser parser(text);
    return RelationExpr(std::string(text), parser.parse_top());
}

bool RelationExpr::eval(Value a, Value b) const {
    return root_->eval_bool(a, b);
}

RelationExpr::RelationExpr(std::string text, std::unique_ptr<Node> root)
    : text_(std::move(text)), root_(std::move(root)) {}

RelationExpr::RelationExpr(RelationExpr&&) noexcept = default;
RelationExpr& RelationExpr::operator=(RelationExpr&&) noexcept = default;
RelationExpr::~RelationExpr() = default;

LocalityRelation eval_relation_expr(std::string_view expr, Domain domain) {
    RelationExpr parsed = RelationExpr::parse(expr);
    LocalityRelation rel(domain);
    for (Value a = 0; a < domain.size; ++a) {
        for (Value b = 0; b < domain.size; ++b) {
            if (parsed.eval(a, b)) {
                rel.add(a, b);
            }
        }
    }
    return rel;
}

} // namespace uniring
